#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "commdeg/errors.hpp"
#include "commdeg/group.hpp"
#include "commdeg/rational.hpp"

namespace commdeg {

using Complex = std::complex<double>;
using ClassesPtr = std::shared_ptr<const ConjClasses>;

inline Complex snap_complex(Complex z, double tol = 1e-8) {
    double re = z.real(), im = z.imag();
    if (std::abs(im) < tol) im = 0.0;
    if (std::abs(re - std::round(re)) < tol) re = std::round(re);
    if (im != 0.0 && std::abs(im - std::round(im)) < tol) im = std::round(im);
    return {re, im};
}

/// A complex-valued function constant on conjugacy classes, stored by class
/// index in the group's canonical class order.
struct ClassFunction {
    GroupPtr group;
    ClassesPtr classes;
    std::vector<Complex> values;

    Complex at_class(std::size_t i) const { return values[i]; }
    Complex at_element(Elem e) const { return values[static_cast<std::size_t>(classes->class_of[e])]; }
};

/// The irreducible complex characters of a group in a deterministic order:
/// trivial character first, the rest sorted by (degree, values).
struct CharacterTable {
    GroupPtr group;
    ClassesPtr classes;
    std::vector<ClassFunction> rows;
    std::vector<unsigned> degrees;

    std::size_t k() const { return rows.size(); }
    Complex value(std::size_t chi, std::size_t cls) const { return rows[chi].values[cls]; }
};

struct CharacterDegreeSet {
    std::vector<unsigned> degrees;       // sorted distinct cd(G)
    std::optional<unsigned> m_g;         // least degree > 1; absent for abelian
};

namespace dixon {

struct Fq {
    std::uint64_t p;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b % p) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1 % p;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        if (a % p == 0) throw NumericalFailure("division by zero in F_q");
        return pow(a, p - 2);
    }
};

using Vec = std::vector<std::uint64_t>;
using Mat = std::vector<Vec>; // row-major

/// Smallest prime q = 1 (mod e) with q > bound.
inline std::uint64_t find_modulus(unsigned e, double bound) {
    std::uint64_t q = e + 1;
    while (q <= bound || !is_prime(static_cast<long long>(q))) q += e;
    return q;
}

inline std::uint64_t primitive_root(const Fq& f) {
    std::uint64_t n = f.p - 1;
    std::vector<std::uint64_t> primes;
    std::uint64_t m = n;
    for (std::uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) primes.push_back(m);
    for (std::uint64_t g = 2; g < f.p; ++g) {
        bool ok = true;
        for (std::uint64_t pr : primes)
            if (f.pow(g, n / pr) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw NumericalFailure("no primitive root found");
}

/// Solves M * B = C for B where M has full column rank (columns of C are in
/// the column space of M). All matrices are k x m / k x r, row-major.
inline Mat solve_in_column_space(const Fq& f, const Mat& basis, const Mat& images) {
    std::size_t k = basis.size(), m = basis.empty() ? 0 : basis[0].size();
    std::size_t r = images.empty() ? 0 : images[0].size();
    Mat aug(k, Vec(m + r));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < m; ++j) aug[i][j] = basis[i][j];
        for (std::size_t j = 0; j < r; ++j) aug[i][m + j] = images[i][j];
    }
    std::vector<std::size_t> pivot_row(m);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < k; ++col) {
        std::size_t pr = row;
        while (pr < k && aug[pr][col] == 0) ++pr;
        if (pr == k) throw NumericalFailure("basis matrix is rank deficient");
        std::swap(aug[pr], aug[row]);
        std::uint64_t iv = f.inv(aug[row][col]);
        for (std::size_t j = col; j < m + r; ++j) aug[row][j] = f.mul(aug[row][j], iv);
        for (std::size_t i = 0; i < k; ++i) {
            if (i == row || aug[i][col] == 0) continue;
            std::uint64_t factor = aug[i][col];
            for (std::size_t j = col; j < m + r; ++j)
                aug[i][j] = f.sub(aug[i][j], f.mul(factor, aug[row][j]));
        }
        pivot_row[col] = row;
        ++row;
    }
    // consistency: rows beyond the pivots must be zero on the image side
    for (std::size_t i = row; i < k; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (aug[i][m + j] != 0) throw NumericalFailure("image not inside subspace");
    Mat out(m, Vec(r));
    for (std::size_t col = 0; col < m; ++col)
        for (std::size_t j = 0; j < r; ++j) out[col][j] = aug[pivot_row[col]][m + j];
    return out;
}

/// Characteristic polynomial via similarity reduction to Hessenberg form.
/// Returns coefficients c[0..m] with p(x) = sum c_i x^i (monic).
inline Vec char_poly(const Fq& f, Mat b) {
    std::size_t m = b.size();
    for (std::size_t col = 0; col + 2 < m; ++col) {
        std::size_t piv = col + 1;
        while (piv < m && b[piv][col] == 0) ++piv;
        if (piv == m) continue;
        if (piv != col + 1) {
            std::swap(b[piv], b[col + 1]);
            for (std::size_t i = 0; i < m; ++i) std::swap(b[i][piv], b[i][col + 1]);
        }
        std::uint64_t iv = f.inv(b[col + 1][col]);
        for (std::size_t i = col + 2; i < m; ++i) {
            if (b[i][col] == 0) continue;
            std::uint64_t factor = f.mul(b[i][col], iv);
            for (std::size_t j = 0; j < m; ++j) b[i][j] = f.sub(b[i][j], f.mul(factor, b[col + 1][j]));
            for (std::size_t r = 0; r < m; ++r) b[r][col + 1] = f.add(b[r][col + 1], f.mul(factor, b[r][i]));
        }
    }
    // p_i(x) for the leading i x i principal Hessenberg block
    std::vector<Vec> p(m + 1);
    p[0] = {1};
    for (std::size_t i = 1; i <= m; ++i) {
        Vec cur(i + 1, 0);
        // (x - h_{i-1,i-1}) * p_{i-1}
        for (std::size_t t = 0; t < p[i - 1].size(); ++t) {
            cur[t + 1] = f.add(cur[t + 1], p[i - 1][t]);
            cur[t] = f.sub(cur[t], f.mul(b[i - 1][i - 1], p[i - 1][t]));
        }
        std::uint64_t sub_prod = 1;
        for (std::size_t j = 1; j < i; ++j) {
            sub_prod = f.mul(sub_prod, b[i - j][i - j - 1]);
            std::uint64_t factor = f.mul(b[i - 1 - j][i - 1], sub_prod);
            if (factor == 0) continue;
            for (std::size_t t = 0; t < p[i - 1 - j].size(); ++t)
                cur[t] = f.sub(cur[t], f.mul(factor, p[i - 1 - j][t]));
        }
        p[i] = std::move(cur);
    }
    return p[m];
}

inline std::uint64_t eval_poly(const Fq& f, const Vec& c, std::uint64_t x) {
    std::uint64_t r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = f.add(f.mul(r, x), c[i]);
    return r;
}

/// Null space basis of (B - lambda I), as columns in reduced echelon form.
inline Mat null_space(const Fq& f, Mat b, std::uint64_t lambda) {
    std::size_t m = b.size();
    for (std::size_t i = 0; i < m; ++i) b[i][i] = f.sub(b[i][i], lambda);
    std::vector<long long> pivot_of_col(m, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < m; ++col) {
        std::size_t pr = row;
        while (pr < m && b[pr][col] == 0) ++pr;
        if (pr == m) continue;
        std::swap(b[pr], b[row]);
        std::uint64_t iv = f.inv(b[row][col]);
        for (std::size_t j = 0; j < m; ++j) b[row][j] = f.mul(b[row][j], iv);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || b[i][col] == 0) continue;
            std::uint64_t factor = b[i][col];
            for (std::size_t j = 0; j < m; ++j) b[i][j] = f.sub(b[i][j], f.mul(factor, b[row][j]));
        }
        pivot_of_col[col] = static_cast<long long>(row);
        ++row;
    }
    Mat basis; // one column per free variable; returned as list of m-vectors
    for (std::size_t col = 0; col < m; ++col) {
        if (pivot_of_col[col] != -1) continue;
        Vec v(m, 0);
        v[col] = 1;
        for (std::size_t c2 = 0; c2 < m; ++c2)
            if (pivot_of_col[c2] != -1)
                v[c2] = f.sub(0, b[static_cast<std::size_t>(pivot_of_col[c2])][col]);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace dixon

namespace detail {

/// Basis of a finite abelian group: independent generators with
/// gens[i] of order ord[i], every element a unique product of powers.
struct AbelianBasis {
    std::vector<Elem> gens;
    std::vector<unsigned> orders;
    std::vector<std::vector<unsigned>> coords; // element id -> exponents
};

inline AbelianBasis abelian_basis(const FiniteGroup& g) {
    AbelianBasis out;
    // primary decomposition first: basis elements are found Sylow by Sylow,
    // where the greedy max-coset-order pick (with representative adjustment)
    // is valid
    std::vector<long long> primes;
    {
        long long n = static_cast<long long>(g.order());
        for (long long d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                primes.push_back(d);
                while (n % d == 0) n /= d;
            }
        if (n > 1) primes.push_back(n);
    }
    for (long long p : primes) {
        std::vector<Elem> sylow; // elements of p-power order
        for (std::size_t x = 0; x < g.order(); ++x) {
            unsigned o = g.element_order(static_cast<Elem>(x));
            while (o % p == 0) o /= static_cast<unsigned>(p);
            if (o == 1) sylow.push_back(static_cast<Elem>(x));
        }
        std::vector<bool> in(g.order(), false);
        in[0] = true;
        std::size_t sub_size = 1;
        std::vector<Elem> sub{0};
        auto coset_order = [&](Elem x) {
            unsigned t = 1;
            Elem c = x;
            while (!in[c]) {
                c = g.mul(c, x);
                ++t;
            }
            return t;
        };
        while (sub_size < sylow.size()) {
            Elem best = 0;
            unsigned best_ord = 0;
            for (Elem x : sylow) {
                if (in[x]) continue;
                unsigned t = coset_order(x);
                if (t > best_ord) {
                    best_ord = t;
                    best = x;
                }
            }
            // adjust the representative so its element order equals the coset order
            Elem chosen = best;
            bool found = false;
            for (Elem h : sub) {
                Elem cand = g.mul(best, h);
                if (g.element_order(cand) == best_ord) {
                    chosen = cand;
                    found = true;
                    break;
                }
            }
            if (!found) throw NumericalFailure("abelian basis: no clean coset representative");
            out.gens.push_back(chosen);
            out.orders.push_back(best_ord);
            std::vector<Elem> gens = sub;
            gens.push_back(chosen);
            sub = closure(g, gens);
            sub_size = sub.size();
            for (Elem e : sub) in[e] = true;
        }
    }
    // coordinates by direct enumeration of all exponent tuples
    std::vector<bool> assigned(g.order(), false);
    out.coords.assign(g.order(), {});
    std::vector<unsigned> tup(out.gens.size(), 0);
    while (true) {
        Elem e = 0;
        for (std::size_t i = 0; i < out.gens.size(); ++i) e = g.mul(e, g.power(out.gens[i], tup[i]));
        if (assigned[e]) throw NumericalFailure("abelian basis is not independent");
        assigned[e] = true;
        out.coords[e] = tup;
        std::size_t i = 0;
        for (; i < tup.size(); ++i) {
            if (++tup[i] < out.orders[i]) break;
            tup[i] = 0;
        }
        if (i == tup.size()) break;
    }
    for (std::size_t e = 0; e < g.order(); ++e)
        if (!assigned[e]) throw NumericalFailure("abelian basis does not span");
    return out;
}

inline std::vector<std::vector<Complex>> abelian_character_values(const FiniteGroup& g) {
    AbelianBasis basis = abelian_basis(g);
    std::size_t n = g.order();
    std::vector<std::vector<Complex>> rows;
    rows.reserve(n);
    std::vector<unsigned> c(basis.gens.size(), 0);
    constexpr double tau = 6.283185307179586476925286766559;
    while (true) {
        std::vector<Complex> row(n);
        for (std::size_t e = 0; e < n; ++e) {
            double angle = 0;
            for (std::size_t i = 0; i < basis.gens.size(); ++i)
                angle += tau * static_cast<double>(c[i]) * basis.coords[e][i] / basis.orders[i];
            row[e] = {std::cos(angle), std::sin(angle)};
        }
        rows.push_back(std::move(row));
        std::size_t i = 0;
        for (; i < c.size(); ++i) {
            if (++c[i] < basis.orders[i]) break;
            c[i] = 0;
        }
        if (i == c.size() || c.empty()) break;
    }
    return rows;
}

/// Dixon's method: simultaneous eigenvectors of the class-multiplication
/// matrices over F_q with q = 1 (mod exp G), lifted to complex values through
/// the discrete Fourier coefficients of the power map.
inline std::vector<std::vector<Complex>> dixon_character_values(const FiniteGroup& g,
                                                                const ConjClasses& cc,
                                                                std::vector<unsigned>* degrees_out) {
    using namespace dixon;
    std::size_t k = cc.k();
    std::size_t n = g.order();
    unsigned e = g.exponent();
    Fq f{find_modulus(e, 2.0 * std::sqrt(static_cast<double>(n)))};
    std::uint64_t w = f.pow(primitive_root(f), (f.p - 1) / e); // order-e root in F_q

    std::vector<int> inverse_class(k);
    for (std::size_t i = 0; i < k; ++i) inverse_class[i] = cc.class_of[g.inv(cc.representative(i))];

    auto class_matrix = [&](std::size_t i) {
        Mat a(k, Vec(k, 0));
        for (std::size_t l = 0; l < k; ++l) {
            Elem zl = cc.representative(l);
            for (Elem x : cc.classes[i]) {
                int j = cc.class_of[g.mul(g.inv(x), zl)];
                a[static_cast<std::size_t>(j)][l] = f.add(a[static_cast<std::size_t>(j)][l], 1);
            }
        }
        return a;
    };

    // split the ambient space into common eigenspaces
    std::vector<Mat> spaces; // each: list of ambient basis vectors
    {
        Mat whole;
        for (std::size_t i = 0; i < k; ++i) {
            Vec v(k, 0);
            v[i] = 1;
            whole.push_back(std::move(v));
        }
        spaces.push_back(std::move(whole));
    }
    for (std::size_t ci = 1; ci < k; ++ci) {
        bool all_one = std::all_of(spaces.begin(), spaces.end(), [](const Mat& s) { return s.size() == 1; });
        if (all_one) break;
        Mat a = class_matrix(ci);
        std::vector<Mat> next;
        for (Mat& s : spaces) {
            std::size_t m = s.size();
            if (m == 1) {
                next.push_back(std::move(s));
                continue;
            }
            // basis matrix (k x m) and its image (k x m)
            Mat basis(k, Vec(m)), image(k, Vec(m, 0));
            for (std::size_t c = 0; c < m; ++c)
                for (std::size_t r = 0; r < k; ++r) basis[r][c] = s[c][r];
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < m; ++c) {
                    std::uint64_t acc = 0;
                    for (std::size_t t = 0; t < k; ++t)
                        if (a[r][t] && basis[t][c]) acc = f.add(acc, f.mul(a[r][t], basis[t][c]));
                    image[r][c] = acc;
                }
            Mat b = solve_in_column_space(f, basis, image); // m x m restriction
            Vec poly = char_poly(f, b);
            std::vector<std::uint64_t> roots;
            for (std::uint64_t lam = 0; lam < f.p; ++lam)
                if (eval_poly(f, poly, lam) == 0) roots.push_back(lam);
            if (roots.size() <= 1) {
                next.push_back(std::move(s));
                continue;
            }
            std::size_t total = 0;
            for (std::uint64_t lam : roots) {
                Mat ns = null_space(f, b, lam);
                if (ns.empty()) continue;
                Mat sub;
                for (const Vec& coeff : ns) {
                    Vec ambient(k, 0);
                    for (std::size_t c = 0; c < m; ++c)
                        if (coeff[c])
                            for (std::size_t r = 0; r < k; ++r)
                                ambient[r] = f.add(ambient[r], f.mul(coeff[c], s[c][r]));
                    sub.push_back(std::move(ambient));
                }
                total += sub.size();
                next.push_back(std::move(sub));
            }
            if (total != m) throw NumericalFailure("class matrix restriction is not diagonalizable");
        }
        spaces = std::move(next);
    }
    for (const Mat& s : spaces)
        if (s.size() != 1) throw NumericalFailure("class matrices failed to separate eigenspaces");

    // recover chi mod q, then the complex values via the power-map DFT
    std::vector<std::vector<std::uint64_t>> chi_mod(spaces.size(), std::vector<std::uint64_t>(k));
    std::vector<unsigned> degrees(spaces.size());
    for (std::size_t t = 0; t < spaces.size(); ++t) {
        Vec v = spaces[t][0];
        if (v[0] == 0) throw NumericalFailure("eigenvector vanishes on the identity class");
        std::uint64_t scale = f.inv(v[0]);
        for (auto& x : v) x = f.mul(x, scale);
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < k; ++i)
            s = f.add(s, f.mul(f.mul(v[i], v[static_cast<std::size_t>(inverse_class[i])]),
                               f.inv(cc.classes[i].size() % f.p)));
        std::uint64_t d2 = f.mul(n % f.p, f.inv(s));
        unsigned d = 0;
        for (unsigned cand = 1; static_cast<std::uint64_t>(cand) * cand <= n; ++cand)
            if (f.mul(cand, cand) == d2) {
                d = cand;
                break;
            }
        if (d == 0) throw NumericalFailure("character degree not recovered");
        degrees[t] = d;
        for (std::size_t i = 0; i < k; ++i)
            chi_mod[t][i] = f.mul(f.mul(d, v[i]), f.inv(cc.classes[i].size() % f.p));
    }

    constexpr double tau = 6.283185307179586476925286766559;
    std::vector<std::vector<Complex>> values(spaces.size(), std::vector<Complex>(k));
    for (std::size_t i = 0; i < k; ++i) {
        Elem rep = cc.representative(i);
        unsigned o = g.element_order(rep);
        std::vector<int> power_class(o);
        Elem c = 0;
        for (unsigned s = 0; s < o; ++s) {
            power_class[s] = cc.class_of[c];
            c = g.mul(c, rep);
        }
        std::uint64_t wo = f.pow(w, e / o);
        std::uint64_t inv_o = f.inv(o % f.p);
        for (std::size_t t = 0; t < spaces.size(); ++t) {
            Complex val = 0;
            unsigned total = 0;
            for (unsigned j = 0; j < o; ++j) {
                std::uint64_t mj = 0;
                for (unsigned s = 0; s < o; ++s) {
                    std::uint64_t term = f.mul(chi_mod[t][static_cast<std::size_t>(power_class[s])],
                                               f.pow(f.inv(wo), static_cast<std::uint64_t>(j) * s % o));
                    mj = f.add(mj, term);
                }
                mj = f.mul(mj, inv_o);
                if (mj > degrees[t]) throw NumericalFailure("eigenvalue multiplicity out of range");
                total += static_cast<unsigned>(mj);
                if (mj)
                    val += static_cast<double>(mj) *
                           Complex(std::cos(tau * j / o), std::sin(tau * j / o));
            }
            if (total != degrees[t]) throw NumericalFailure("eigenvalue multiplicities do not sum to degree");
            values[t][i] = val;
        }
    }
    if (degrees_out) *degrees_out = degrees;
    return values;
}

} // namespace detail

/// Computes the character table (memoized per group content). The finite
/// field route produces exact cyclotomic values; the orthogonality residual
/// is still checked and a failure aborts rather than returning a bad table.
inline CharacterTable character_table(const GroupPtr& g, std::size_t order_limit = 2000) {
    if (g->order() > order_limit)
        throw BudgetExceeded("character table limited to order " + std::to_string(order_limit));

    static std::mutex mu;
    static std::map<std::uint64_t, std::shared_ptr<const CharacterTable>> cache;
    std::uint64_t key = g->content_hash();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            CharacterTable t = *it->second;
            t.group = g;
            return t;
        }
    }

    auto classes = std::make_shared<ConjClasses>(conjugacy_classes(*g));
    std::size_t k = classes->k();
    std::vector<std::vector<Complex>> raw; // per character, values by class
    std::vector<unsigned> degrees;

    bool done = false;
    if (k == g->order()) {
        try {
            auto by_element = detail::abelian_character_values(*g);
            raw.reserve(k);
            for (auto& row : by_element) {
                std::vector<Complex> by_class(k);
                for (std::size_t i = 0; i < k; ++i) by_class[i] = row[classes->representative(i)];
                raw.push_back(std::move(by_class));
            }
            degrees.assign(k, 1);
            done = true;
        } catch (const NumericalFailure&) {
            raw.clear(); // fall through to the generic route
        }
    }
    if (!done) raw = detail::dixon_character_values(*g, *classes, &degrees);

    // snap and order rows deterministically: trivial first, then by (degree, values)
    std::vector<std::size_t> idx(raw.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (auto& row : raw)
        for (auto& v : row) v = snap_complex(v);
    auto rounded = [&](std::size_t t, std::size_t i) {
        Complex v = raw[t][i];
        return std::pair<double, double>(std::round(v.real() * 1e6) / 1e6, std::round(v.imag() * 1e6) / 1e6);
    };
    auto is_trivial = [&](std::size_t t) {
        for (std::size_t i = 0; i < k; ++i)
            if (std::abs(raw[t][i] - Complex(1, 0)) > 1e-8) return false;
        return true;
    };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        bool ta = is_trivial(a), tb = is_trivial(b);
        if (ta != tb) return ta;
        if (degrees[a] != degrees[b]) return degrees[a] < degrees[b];
        for (std::size_t i = 0; i < k; ++i) {
            auto va = rounded(a, i), vb = rounded(b, i);
            if (va != vb) return va < vb;
        }
        return false;
    });

    CharacterTable table;
    table.group = g;
    table.classes = classes;
    for (std::size_t t : idx) {
        table.rows.push_back(ClassFunction{g, classes, raw[t]});
        table.degrees.push_back(degrees[t]);
    }

    // invariants
    if (table.rows.empty() || !is_trivial(idx[0])) throw NumericalFailure("trivial character missing");
    unsigned long long sq = 0;
    for (unsigned d : table.degrees) {
        sq += static_cast<unsigned long long>(d) * d;
        if (g->order() % d != 0) throw NumericalFailure("character degree does not divide group order");
    }
    if (sq != g->order()) throw NumericalFailure("degree squares do not sum to group order");
    for (std::size_t a = 0; a < table.k(); ++a)
        for (std::size_t b = a; b < table.k(); ++b) {
            Complex s = 0;
            for (std::size_t i = 0; i < k; ++i)
                s += static_cast<double>(classes->classes[i].size()) * table.value(a, i) *
                     std::conj(table.value(b, i));
            s /= static_cast<double>(g->order());
            double expect = (a == b) ? 1.0 : 0.0;
            if (std::abs(s - Complex(expect, 0)) > 1e-8)
                throw NumericalFailure("row orthogonality residual above tolerance");
        }

    {
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(key, std::make_shared<CharacterTable>(table));
    }
    return table;
}

/// (1/|H|) sum_{h in H} phi(h) conj(psi(h)).
inline Complex inner_product(const ClassFunction& phi, const ClassFunction& psi, const Subgroup& h) {
    if (!same_group(phi.group, h.parent()) || !same_group(psi.group, h.parent()))
        throw ParentMismatch("class functions and subgroup live in different groups");
    Complex s = 0;
    for (Elem e : h.elements()) s += phi.at_element(e) * std::conj(psi.at_element(e));
    s /= static_cast<double>(h.order());
    return snap_complex(s);
}

/// Same inner product snapped to an exact rational with denominator dividing
/// |H|; the snap must land within tol or the computation aborts.
inline Rational inner_product_rational(const ClassFunction& phi, const ClassFunction& psi,
                                       const Subgroup& h, double tol = 1e-8) {
    Complex s = inner_product(phi, psi, h);
    if (std::abs(s.imag()) > tol) throw NumericalFailure("inner product has nonreal value");
    double scaled = s.real() * static_cast<double>(h.order());
    double nearest = std::round(scaled);
    if (std::abs(scaled - nearest) > tol * static_cast<double>(h.order()))
        throw NumericalFailure("inner product does not snap to a rational with denominator |H|");
    return Rational(static_cast<long long>(nearest), static_cast<long long>(h.order()));
}

/// Values of a class function of G on the elements of a subgroup, listed in
/// the subgroup's element order.
inline std::vector<Complex> restrict_to(const ClassFunction& f, const Subgroup& h) {
    if (!same_group(f.group, h.parent())) throw ParentMismatch("restriction across different groups");
    std::vector<Complex> out;
    out.reserve(h.order());
    for (Elem e : h.elements()) out.push_back(f.at_element(e));
    return out;
}

/// Induction to the parent group: chi^G(g) = (1/|H|) sum_{x} chi0(x^-1 g x).
inline ClassFunction induce(const Subgroup& h, const std::vector<Complex>& values_on_h,
                            const ClassesPtr& classes) {
    if (values_on_h.size() != h.order()) throw ParentMismatch("one value per subgroup element required");
    const GroupPtr& g = h.parent();
    std::vector<Complex> by_class(classes->k(), Complex(0, 0));
    std::vector<int> pos(g->order(), -1);
    const auto& es = h.elements();
    for (std::size_t i = 0; i < es.size(); ++i) pos[es[i]] = static_cast<int>(i);
    for (std::size_t ci = 0; ci < classes->k(); ++ci) {
        Elem rep = classes->representative(ci);
        Complex s = 0;
        for (std::size_t x = 0; x < g->order(); ++x) {
            Elem c = g->conj(g->inv(static_cast<Elem>(x)), rep);
            if (pos[c] >= 0) s += values_on_h[static_cast<std::size_t>(pos[c])];
        }
        by_class[ci] = snap_complex(s / static_cast<double>(h.order()));
    }
    return ClassFunction{g, classes, std::move(by_class)};
}

inline BigInt snap_to_integer(double x, double tol = 1e-4) {
    double nearest = std::round(x);
    if (std::abs(x - nearest) > tol)
        throw NumericalFailure("value " + std::to_string(x) + " does not snap to an integer");
    return BigInt(static_cast<long long>(nearest));
}

/// Frobenius: number of pairs (x, y) with [x,y] = g, via
/// zeta(g) = sum_chi (|G|/chi(1)) chi(g).
inline BigInt frobenius_zeta(const CharacterTable& t, Elem g) {
    t.group->check_element(g);
    Complex s = 0;
    std::size_t cls = static_cast<std::size_t>(t.classes->class_of[g]);
    for (std::size_t i = 0; i < t.k(); ++i)
        s += static_cast<double>(t.group->order()) / t.degrees[i] * t.value(i, cls);
    if (std::abs(s.imag()) > 1e-4) throw NumericalFailure("frobenius zeta has nonreal value");
    return snap_to_integer(s.real());
}

/// Number of pairs (h, y) in H x G with [h, y] = g, for H normal in G:
/// zeta~(g) = sum_chi |H| [chi_H, chi_H] / chi(1) * chi(g).
/// When `second_form` is set, also evaluates the induced-character form
/// sum |H|[chi_H^G, chi]/chi(1) chi(g) and requires agreement within 1e-6.
inline BigInt zeta_tilde(const CharacterTable& t, const Subgroup& h, Elem g, bool second_form = false) {
    const GroupPtr& gp = t.group;
    gp->check_element(g);
    if (!same_group(h.parent(), gp)) throw ParentMismatch("subgroup of a different group");
    if (!is_normal(*gp, h)) throw NotNormal("zeta~ requires a normal subgroup");
    std::size_t cls = static_cast<std::size_t>(t.classes->class_of[g]);
    Complex s = 0;
    for (std::size_t i = 0; i < t.k(); ++i) {
        Rational ip = inner_product_rational(t.rows[i], t.rows[i], h);
        s += static_cast<double>(h.order()) * ip.to_double() / t.degrees[i] * t.value(i, cls);
    }
    if (second_form) {
        Complex s2 = 0;
        for (std::size_t i = 0; i < t.k(); ++i) {
            ClassFunction ind = induce(h, restrict_to(t.rows[i], h), t.classes);
            Complex ip = 0; // [chi_H^G, chi]_G
            for (std::size_t c = 0; c < t.k(); ++c)
                ip += static_cast<double>(t.classes->classes[c].size()) * ind.values[c] *
                      std::conj(t.value(i, c));
            ip /= static_cast<double>(gp->order());
            s2 += static_cast<double>(h.order()) * ip.real() / t.degrees[i] * t.value(i, cls);
        }
        if (std::abs(s - s2) > 1e-6)
            throw NumericalFailure("the two zeta~ sum forms disagree");
    }
    if (std::abs(s.imag()) > 1e-4) throw NumericalFailure("zeta~ has nonreal value");
    return snap_to_integer(s.real());
}

/// Number of tuples ((h_1,g_1),...,(h_n,g_n)) with [h_1,g_1]...[h_n,g_n] = g,
/// H normal in G.
inline BigInt zeta_tilde_2n(const CharacterTable& t, const Subgroup& h, Elem g, unsigned n) {
    const GroupPtr& gp = t.group;
    gp->check_element(g);
    if (!same_group(h.parent(), gp)) throw ParentMismatch("subgroup of a different group");
    if (!is_normal(*gp, h)) throw NotNormal("zeta~_2n requires a normal subgroup");
    if (n < 1) throw InvalidSpec("zeta~_2n requires n >= 1");
    std::size_t cls = static_cast<std::size_t>(t.classes->class_of[g]);
    double s_re = 0, s_im = 0;
    for (std::size_t i = 0; i < t.k(); ++i) {
        Rational ip = inner_product_rational(t.rows[i], t.rows[i], h);
        // |G|^{n-1} |H|^n [chi_H, chi_H]^n / chi(1)^{2n-1}
        double coeff = 1;
        for (unsigned j = 0; j + 1 < n; ++j) coeff *= static_cast<double>(gp->order());
        for (unsigned j = 0; j < n; ++j) coeff *= static_cast<double>(h.order()) * ip.to_double();
        for (unsigned j = 0; j + 1 < 2 * n; ++j) coeff /= t.degrees[i];
        Complex term = coeff * t.value(i, cls);
        s_re += term.real();
        s_im += term.imag();
    }
    if (std::abs(s_im) > 1e-4) throw NumericalFailure("zeta~_2n has nonreal value");
    return snap_to_integer(s_re);
}

/// Number of triples (g_1, h_2, g_3) with g_1 h_2 g_1^{-1} g_3 h_2^{-1} g_3^{-1} = g.
/// H is any subgroup here; normality is not part of the statement.
inline BigInt zeta_tilde_3(const CharacterTable& t, const Subgroup& h, Elem g) {
    const GroupPtr& gp = t.group;
    gp->check_element(g);
    if (!same_group(h.parent(), gp)) throw ParentMismatch("subgroup of a different group");
    std::size_t cls = static_cast<std::size_t>(t.classes->class_of[g]);
    Complex s = 0;
    for (std::size_t i = 0; i < t.k(); ++i) {
        Rational ip = inner_product_rational(t.rows[i], t.rows[i], h);
        s += static_cast<double>(gp->order()) * h.order() * ip.to_double() / t.degrees[i] *
             t.value(i, cls);
    }
    if (std::abs(s.imag()) > 1e-4) throw NumericalFailure("zeta~_3 has nonreal value");
    return snap_to_integer(s.real());
}

struct CentralTypeReport {
    CharacterDegreeSet cd;
    bool is_central_type = false;
    std::size_t center_index = 0; // |G : Z(G)|
};

inline CentralTypeReport central_type_report(const CharacterTable& t) {
    CentralTypeReport out;
    std::set<unsigned> ds(t.degrees.begin(), t.degrees.end());
    out.cd.degrees.assign(ds.begin(), ds.end());
    for (unsigned d : out.cd.degrees)
        if (d > 1) {
            out.cd.m_g = d;
            break;
        }
    out.center_index = t.group->order() / center(t.group).order();
    for (unsigned d : t.degrees)
        if (static_cast<std::size_t>(d) * d == out.center_index) {
            out.is_central_type = true;
            break;
        }
    return out;
}

struct Decomposition {
    std::vector<BigInt> multiplicities;
    bool is_character = false;
};

/// Multiplicities [f, chi_i]; is_character iff all are nonnegative integers
/// within the snap tolerance.
inline Decomposition decompose(const CharacterTable& t, const ClassFunction& f, double tol = 1e-6) {
    if (!same_group(f.group, t.group)) throw ParentMismatch("class function of a different group");
    Decomposition out;
    out.is_character = true;
    for (std::size_t i = 0; i < t.k(); ++i) {
        Complex s = 0;
        for (std::size_t c = 0; c < t.k(); ++c)
            s += static_cast<double>(t.classes->classes[c].size()) * f.values[c] *
                 std::conj(t.value(i, c));
        s /= static_cast<double>(t.group->order());
        double nearest = std::round(s.real());
        if (std::abs(s.imag()) > tol || std::abs(s.real() - nearest) > tol || nearest < 0)
            out.is_character = false;
        out.multiplicities.push_back(BigInt(static_cast<long long>(nearest)));
    }
    return out;
}

inline BigInt frobenius_zeta(const GroupPtr& g, Elem e) { return frobenius_zeta(character_table(g), e); }

inline BigInt zeta_tilde(const GroupPtr& g, const Subgroup& h, Elem e, bool second_form = false) {
    return zeta_tilde(character_table(g), h, e, second_form);
}

inline BigInt zeta_tilde_2n(const GroupPtr& g, const Subgroup& h, Elem e, unsigned n) {
    return zeta_tilde_2n(character_table(g), h, e, n);
}

inline BigInt zeta_tilde_3(const GroupPtr& g, const Subgroup& h, Elem e) {
    return zeta_tilde_3(character_table(g), h, e);
}

inline CentralTypeReport central_type_report(const GroupPtr& g) {
    return central_type_report(character_table(g));
}

/// Builds a class function from exact per-element counts, verifying constancy
/// on conjugacy classes.
inline ClassFunction class_function_from_counts(const GroupPtr& g, const ClassesPtr& classes,
                                                const std::vector<BigInt>& counts) {
    if (counts.size() != g->order()) throw ParentMismatch("one count per element required");
    std::vector<Complex> vals(classes->k());
    for (std::size_t i = 0; i < classes->k(); ++i) {
        const BigInt& v0 = counts[classes->classes[i][0]];
        for (Elem e : classes->classes[i])
            if (counts[e] != v0) throw ValidationError("counts are not constant on a conjugacy class");
        if (v0 > BigInt(1) << 52) throw NumericalFailure("count too large for exact double conversion");
        vals[i] = Complex(static_cast<double>(v0.convert_to<long long>()), 0);
    }
    return ClassFunction{g, classes, std::move(vals)};
}

} // namespace commdeg
