#pragma once

#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "commdeg/errors.hpp"
#include "commdeg/group.hpp"
#include "commdeg/group_io.hpp"
#include "commdeg/perm.hpp"
#include "commdeg/rational.hpp"

namespace commdeg {

/// Constructor parameters for the built-in group families.
struct GroupSpec {
    enum class Kind {
        Cyclic,
        Dihedral,
        GeneralizedQuaternion,
        DirectProduct,
        SemidirectCyclic,
        ModularP3,
        Extraspecial,
        WreathCyclic,
        Permutation,
        Symmetric,
        Alternating,
        CayleyFile,
    };

    Kind kind = Kind::Cyclic;
    long long a = 0, b = 0, c = 0;
    bool exponent_p = true; // extraspecial type flag: '+' when true
    std::size_t degree = 0;
    std::vector<Perm> generators;
    std::string path;
    std::shared_ptr<GroupSpec> left, right;

    static GroupSpec of(Kind k, long long a = 0, long long b = 0, long long c = 0) {
        GroupSpec s;
        s.kind = k;
        s.a = a;
        s.b = b;
        s.c = c;
        return s;
    }
    static GroupSpec cyclic(long long n) { return of(Kind::Cyclic, n); }
    static GroupSpec dihedral(long long order) { return of(Kind::Dihedral, order); }
    static GroupSpec generalized_quaternion(long long order) { return of(Kind::GeneralizedQuaternion, order); }
    static GroupSpec direct_product(GroupSpec l, GroupSpec r) {
        GroupSpec s = of(Kind::DirectProduct);
        s.left = std::make_shared<GroupSpec>(std::move(l));
        s.right = std::make_shared<GroupSpec>(std::move(r));
        return s;
    }
    static GroupSpec semidirect_cyclic(long long p, long long s, long long r) {
        return of(Kind::SemidirectCyclic, p, s, r);
    }
    static GroupSpec modular_p3(long long p) { return of(Kind::ModularP3, p); }
    static GroupSpec extraspecial(long long p, long long s, bool exp_p) {
        GroupSpec g = of(Kind::Extraspecial, p, s);
        g.exponent_p = exp_p;
        return g;
    }
    static GroupSpec wreath_cyclic(long long p) { return of(Kind::WreathCyclic, p); }
    static GroupSpec permutation(std::size_t degree, std::vector<Perm> gens) {
        GroupSpec g = of(Kind::Permutation);
        g.degree = degree;
        g.generators = std::move(gens);
        return g;
    }
    static GroupSpec symmetric(long long n) { return of(Kind::Symmetric, n); }
    static GroupSpec alternating(long long n) { return of(Kind::Alternating, n); }
    static GroupSpec cayley_file(std::string path) {
        GroupSpec g = of(Kind::CayleyFile);
        g.path = std::move(path);
        return g;
    }
};

namespace build {

inline void check_cap(unsigned long long order, std::size_t cap, const std::string& what) {
    if (order == 0) throw InvalidSpec(what + ": order must be positive");
    if (order > cap)
        throw OrderOverflow(what + ": order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
}

inline GroupPtr cyclic(long long n, std::size_t cap) {
    check_cap(static_cast<unsigned long long>(n), cap, "Cyclic");
    std::size_t m = static_cast<std::size_t>(n);
    std::vector<Elem> t(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) t[i * m + j] = static_cast<Elem>((i + j) % m);
    return make_group(m, std::move(t), "C" + std::to_string(n));
}

/// Dihedral group of the given (even) order 2n: ids 0..n-1 are rotations r^i,
/// ids n..2n-1 are reflections r^i s.
inline GroupPtr dihedral(long long order, std::size_t cap) {
    if (order < 2 || order % 2 != 0) throw InvalidSpec("Dihedral: order must be even and >= 2");
    check_cap(static_cast<unsigned long long>(order), cap, "Dihedral");
    std::size_t n = static_cast<std::size_t>(order) / 2;
    std::size_t m = 2 * n;
    auto rot = [n](std::size_t i) { return i % n; };
    std::vector<Elem> t(m * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            t[i * m + j] = static_cast<Elem>(rot(i + j));                    // r^i r^j
            t[i * m + (n + j)] = static_cast<Elem>(n + rot(i + j));          // r^i (r^j s)
            t[(n + i) * m + j] = static_cast<Elem>(n + rot(i + n - j % n)); // (r^i s) r^j = r^{i-j} s
            t[(n + i) * m + (n + j)] = static_cast<Elem>(rot(i + n - j % n));
        }
    return make_group(m, std::move(t), "D" + std::to_string(order));
}

/// Dicyclic group of order 4m: <a, b : a^{2m} = 1, b^2 = a^m, bab^-1 = a^-1>.
inline GroupPtr dicyclic(long long m, const std::string& name, std::size_t cap) {
    if (m < 1) throw InvalidSpec("Dicyclic: parameter must be >= 1");
    check_cap(static_cast<unsigned long long>(4 * m), cap, "Dicyclic");
    std::size_t mm = static_cast<std::size_t>(m);
    std::size_t two_m = 2 * mm, n = 4 * mm;
    auto rot = [two_m](std::size_t i) { return i % two_m; };
    std::vector<Elem> t(n * n);
    for (std::size_t i = 0; i < two_m; ++i)
        for (std::size_t j = 0; j < two_m; ++j) {
            t[i * n + j] = static_cast<Elem>(rot(i + j));
            t[i * n + (two_m + j)] = static_cast<Elem>(two_m + rot(i + j));
            t[(two_m + i) * n + j] = static_cast<Elem>(two_m + rot(i + two_m - rot(j)));
            t[(two_m + i) * n + (two_m + j)] = static_cast<Elem>(rot(i + two_m - rot(j) + mm));
        }
    return make_group(n, std::move(t), name);
}

inline GroupPtr generalized_quaternion(long long order, std::size_t cap) {
    if (order < 8 || (order & (order - 1)) != 0)
        throw InvalidSpec("GeneralizedQuaternion: order must be a power of two >= 8");
    return dicyclic(order / 4, "Q" + std::to_string(order), cap);
}

inline GroupPtr direct_product(const GroupPtr& ga, const GroupPtr& gb, std::size_t cap) {
    unsigned long long order = static_cast<unsigned long long>(ga->order()) * gb->order();
    check_cap(order, cap, "DirectProduct");
    std::size_t na = ga->order(), nb = gb->order(), n = na * nb;
    std::vector<Elem> t(n * n);
    for (std::size_t a1 = 0; a1 < na; ++a1)
        for (std::size_t b1 = 0; b1 < nb; ++b1)
            for (std::size_t a2 = 0; a2 < na; ++a2)
                for (std::size_t b2 = 0; b2 < nb; ++b2) {
                    std::size_t x = a1 * nb + b1, y = a2 * nb + b2;
                    t[x * n + y] = static_cast<Elem>(
                        static_cast<std::size_t>(ga->mul(static_cast<Elem>(a1), static_cast<Elem>(a2))) * nb +
                        gb->mul(static_cast<Elem>(b1), static_cast<Elem>(b2)));
                }
    return make_group(n, std::move(t), "xprod(" + ga->name() + "," + gb->name() + ")");
}

/// <a, b : a^p = b^s = 1, b a b^-1 = a^r>. Well-defined whenever r^s = 1 and
/// gcd(r, p) = 1 (mod p); p does not have to be prime.
inline GroupPtr semidirect_cyclic(long long p, long long s, long long r, std::size_t cap) {
    if (p < 1 || s < 1) throw InvalidSpec("SemidirectCyclic: p and s must be positive");
    r = ((r % p) + p) % p;
    if (std::gcd(r, p) != 1) throw InvalidSpec("SemidirectCyclic: gcd(r, p) must be 1");
    long long rs = 1;
    for (long long i = 0; i < s; ++i) rs = (rs * r) % p;
    if (rs % p != 1 % p) throw InvalidSpec("SemidirectCyclic: r^s must be 1 mod p");
    unsigned long long order = static_cast<unsigned long long>(p) * s;
    check_cap(order, cap, "SemidirectCyclic");

    std::size_t np = static_cast<std::size_t>(p), ns = static_cast<std::size_t>(s), n = np * ns;
    std::vector<long long> rpow(ns);
    rpow[0] = 1 % p;
    for (std::size_t j = 1; j < ns; ++j) rpow[j] = (rpow[j - 1] * r) % p;
    // element a^i b^j has id i*s + j; (a^i b^j)(a^k b^l) = a^{i + k r^j} b^{j+l}
    std::vector<Elem> t(n * n);
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < ns; ++j)
            for (std::size_t k = 0; k < np; ++k)
                for (std::size_t l = 0; l < ns; ++l) {
                    std::size_t x = i * ns + j, y = k * ns + l;
                    std::size_t ii = (i + k * static_cast<std::size_t>(rpow[j])) % np;
                    t[x * n + y] = static_cast<Elem>(ii * ns + (j + l) % ns);
                }
    return make_group(n, std::move(t),
                      "C" + std::to_string(p) + ":C" + std::to_string(s) + "@" + std::to_string(r));
}

/// <x, y : x^{p^2} = 1 = y^p, y^-1 x y = x^{p+1}>, order p^3.
inline GroupPtr modular_p3(long long p, std::size_t cap) {
    if (!is_prime(p)) throw InvalidSpec("ModularP3: p must be prime");
    unsigned long long order = static_cast<unsigned long long>(p) * p * p;
    check_cap(order, cap, "ModularP3");
    std::size_t np = static_cast<std::size_t>(p), p2 = np * np, n = np * p2;
    // normal form y^j x^i, id = j*p^2 + i; (y^j x^i)(y^l x^k) = y^{j+l} x^{i (p+1)^l + k}
    std::vector<std::size_t> cpow(np);
    cpow[0] = 1;
    for (std::size_t l = 1; l < np; ++l) cpow[l] = (cpow[l - 1] * (np + 1)) % p2;
    std::vector<Elem> t(n * n);
    for (std::size_t j = 0; j < np; ++j)
        for (std::size_t i = 0; i < p2; ++i)
            for (std::size_t l = 0; l < np; ++l)
                for (std::size_t k = 0; k < p2; ++k) {
                    std::size_t x = j * p2 + i, y = l * p2 + k;
                    t[x * n + y] = static_cast<Elem>(((j + l) % np) * p2 + (i * cpow[l] + k) % p2);
                }
    return make_group(n, std::move(t), "M" + std::to_string(order));
}

/// Heisenberg group over F_p of order p^{2s+1}: tuples (a, b, c) with
/// a, b in F_p^s, c in F_p and (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b').
inline GroupPtr heisenberg(long long p, long long s, const std::string& name, std::size_t cap) {
    if (!is_prime(p) || s < 1) throw InvalidSpec("Heisenberg: p must be prime, s >= 1");
    unsigned long long order = 1;
    for (long long i = 0; i < 2 * s + 1; ++i) {
        order *= static_cast<unsigned long long>(p);
        if (order > cap) throw OrderOverflow("Heisenberg: order exceeds cap");
    }
    std::size_t np = static_cast<std::size_t>(p), ns = static_cast<std::size_t>(s);
    std::size_t n = static_cast<std::size_t>(order);
    // id = mixed radix, c least significant, then b coords, then a coords,
    // so the all-zero tuple is id 0.
    auto decode = [&](std::size_t id, std::vector<std::size_t>& a, std::vector<std::size_t>& b, std::size_t& c) {
        c = id % np;
        id /= np;
        for (std::size_t i = 0; i < ns; ++i) {
            b[i] = id % np;
            id /= np;
        }
        for (std::size_t i = 0; i < ns; ++i) {
            a[i] = id % np;
            id /= np;
        }
    };
    auto encode = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b, std::size_t c) {
        std::size_t id = 0;
        for (std::size_t i = ns; i-- > 0;) id = id * np + a[i];
        for (std::size_t i = ns; i-- > 0;) id = id * np + b[i];
        return id * np + c;
    };
    std::vector<Elem> t(n * n);
    std::vector<std::size_t> a1(ns), b1(ns), a2(ns), b2(ns), a3(ns), b3(ns);
    std::size_t c1, c2;
    for (std::size_t x = 0; x < n; ++x) {
        decode(x, a1, b1, c1);
        for (std::size_t y = 0; y < n; ++y) {
            decode(y, a2, b2, c2);
            std::size_t dot = 0;
            for (std::size_t i = 0; i < ns; ++i) {
                a3[i] = (a1[i] + a2[i]) % np;
                b3[i] = (b1[i] + b2[i]) % np;
                dot += a1[i] * b2[i];
            }
            t[x * n + y] = static_cast<Elem>(encode(a3, b3, (c1 + c2 + dot) % np));
        }
    }
    return make_group(n, std::move(t), name);
}

/// Central product identifying the (order-p) centers of two groups whose
/// centers are cyclic of the same prime order.
inline GroupPtr central_product(const GroupPtr& ga, const GroupPtr& gb, const std::string& name,
                                std::size_t cap) {
    Subgroup za = center(ga), zb = center(gb);
    Elem zg = 0, zh = 0;
    for (Elem e : za.elements())
        if (e != 0) {
            zg = e;
            break;
        }
    for (Elem e : zb.elements())
        if (e != 0) {
            zh = e;
            break;
        }
    if (zg == 0 || zh == 0) throw InvalidSpec("central_product: both factors need a nontrivial center");
    unsigned p = ga->element_order(zg);
    if (gb->element_order(zh) != p) throw InvalidSpec("central_product: central orders differ");
    GroupPtr prod = direct_product(ga, gb, cap * p);
    // N = { (zg^t, zh^{-t}) } embedded in the product
    std::vector<Elem> ngens;
    std::size_t nb = gb->order();
    Elem za_t = zg, zb_t = gb->inv(zh);
    ngens.push_back(static_cast<Elem>(static_cast<std::size_t>(za_t) * nb + zb_t));
    auto q = quotient(prod, generated_subgroup(prod, ngens));
    check_cap(q.group->order(), cap, "central_product");
    return make_group(q.group->order(), std::vector<Elem>(q.group->table()), name);
}

/// Extraspecial group of order p^{1+2s}. For odd p, '+' means exponent p
/// (iterated Heisenberg) and '-' means exponent p^2 (one modular factor).
/// For p = 2, '+' is the central product of s copies of D8 and '-' replaces
/// one factor by Q8.
inline GroupPtr extraspecial(long long p, long long s, bool plus, std::size_t cap) {
    if (!is_prime(p) || s < 1) throw InvalidSpec("Extraspecial: p must be prime and s >= 1");
    unsigned long long order = 1;
    for (long long i = 0; i < 2 * s + 1; ++i) order *= static_cast<unsigned long long>(p);
    check_cap(order, cap, "Extraspecial");
    std::string name = std::string("ES") + (plus ? "+" : "-") + std::to_string(order);
    if (plus) {
        if (p == 2) {
            GroupPtr g = dihedral(8, cap);
            for (long long i = 1; i < s; ++i) g = central_product(g, dihedral(8, cap), name, cap);
            return make_group(g->order(), std::vector<Elem>(g->table()), name);
        }
        GroupPtr g = heisenberg(p, s, name, cap);
        return g;
    }
    GroupPtr base = (p == 2) ? generalized_quaternion(8, cap) : modular_p3(p, cap);
    GroupPtr g = base;
    for (long long i = 1; i < s; ++i)
        g = central_product(g, p == 2 ? dihedral(8, cap) : heisenberg(p, 1, "H", cap), name, cap);
    return make_group(g->order(), std::vector<Elem>(g->table()), name);
}

/// C_p wr C_p acting on p^2 points: block rotations and the block shift.
inline GroupPtr wreath_cyclic(long long p, std::size_t cap) {
    if (p < 2) throw InvalidSpec("WreathCyclic: p must be >= 2");
    unsigned long long order = 1;
    for (long long i = 0; i <= p; ++i) {
        order *= static_cast<unsigned long long>(p);
        if (order > cap) throw OrderOverflow("WreathCyclic: order exceeds cap");
    }
    std::size_t np = static_cast<std::size_t>(p);
    std::size_t degree = np * np;
    auto pt = [np](std::size_t block, std::size_t pos) { return block * np + pos; };
    Perm t0(degree), sigma(degree);
    for (std::size_t b = 0; b < np; ++b)
        for (std::size_t j = 0; j < np; ++j) {
            t0[pt(b, j)] = static_cast<int>(b == 0 ? pt(0, (j + 1) % np) : pt(b, j));
            sigma[pt(b, j)] = static_cast<int>(pt((b + 1) % np, j));
        }
    return group_from_permutations(degree, {t0, sigma}, "C" + std::to_string(p) + "wrC" + std::to_string(p),
                                   cap);
}

inline GroupPtr symmetric(long long n, std::size_t cap) {
    if (n < 1) throw InvalidSpec("Symmetric: n must be >= 1");
    if (n == 1) return cyclic(1, cap);
    std::size_t d = static_cast<std::size_t>(n);
    Perm cyc(d), swp(d);
    for (std::size_t i = 0; i < d; ++i) {
        cyc[i] = static_cast<int>((i + 1) % d);
        swp[i] = static_cast<int>(i);
    }
    std::swap(swp[0], swp[1]);
    return group_from_permutations(d, {swp, cyc}, "S" + std::to_string(n), cap);
}

inline GroupPtr alternating(long long n, std::size_t cap) {
    if (n < 1) throw InvalidSpec("Alternating: n must be >= 1");
    if (n <= 2) return cyclic(1, cap);
    std::size_t d = static_cast<std::size_t>(n);
    Perm three(d);
    for (std::size_t i = 0; i < d; ++i) three[i] = static_cast<int>(i);
    three[0] = 1;
    three[1] = 2;
    three[2] = 0;
    if (n == 3) return group_from_permutations(d, {three}, "A3", cap);
    Perm cyc(d);
    for (std::size_t i = 0; i < d; ++i) cyc[i] = static_cast<int>(i);
    if (n % 2 == 1) {
        for (std::size_t i = 0; i < d; ++i) cyc[i] = static_cast<int>((i + 1) % d);
    } else {
        for (std::size_t i = 1; i < d; ++i) cyc[i] = static_cast<int>(i == d - 1 ? 1 : i + 1);
    }
    return group_from_permutations(d, {three, cyc}, "A" + std::to_string(n), cap);
}

/// Semidirect product N x| H from an explicit action: action[h] is the
/// automorphism of N induced by h, as a permutation of N's element ids.
/// The action map h -> Aut(N) is verified to be a homomorphism.
inline GroupPtr semidirect_with_action(const GroupPtr& ng, const GroupPtr& hg,
                                       const std::vector<std::vector<Elem>>& action,
                                       const std::string& name, std::size_t cap) {
    std::size_t nn = ng->order(), nh = hg->order();
    if (action.size() != nh) throw InvalidSpec("semidirect: one action map per H element required");
    for (std::size_t h = 0; h < nh; ++h) {
        const auto& m = action[h];
        if (m.size() != nn) throw InvalidSpec("semidirect: action map has wrong size");
        for (std::size_t a = 0; a < nn; ++a)
            for (std::size_t b = 0; b < nn; ++b)
                if (m[ng->mul(static_cast<Elem>(a), static_cast<Elem>(b))] !=
                    ng->mul(m[a], m[b]))
                    throw InvalidSpec("semidirect: action map is not an automorphism");
    }
    for (std::size_t h1 = 0; h1 < nh; ++h1)
        for (std::size_t h2 = 0; h2 < nh; ++h2) {
            Elem h12 = hg->mul(static_cast<Elem>(h1), static_cast<Elem>(h2));
            for (std::size_t a = 0; a < nn; ++a)
                if (action[h12][a] != action[h1][action[h2][a]])
                    throw InvalidSpec("semidirect: action is not a homomorphism into Aut(N)");
        }
    unsigned long long order = static_cast<unsigned long long>(nn) * nh;
    check_cap(order, cap, "semidirect");
    std::size_t n = nn * nh;
    std::vector<Elem> t(n * n);
    for (std::size_t a1 = 0; a1 < nn; ++a1)
        for (std::size_t h1 = 0; h1 < nh; ++h1)
            for (std::size_t a2 = 0; a2 < nn; ++a2)
                for (std::size_t h2 = 0; h2 < nh; ++h2) {
                    std::size_t x = a1 * nh + h1, y = a2 * nh + h2;
                    Elem na = ng->mul(static_cast<Elem>(a1), action[h1][a2]);
                    t[x * n + y] = static_cast<Elem>(static_cast<std::size_t>(na) * nh +
                                                     hg->mul(static_cast<Elem>(h1), static_cast<Elem>(h2)));
                }
    return make_group(n, std::move(t), name);
}

} // namespace build

inline GroupPtr build_group(const GroupSpec& spec, std::size_t order_cap = FiniteGroup::kDefaultOrderCap) {
    using K = GroupSpec::Kind;
    switch (spec.kind) {
        case K::Cyclic: return build::cyclic(spec.a, order_cap);
        case K::Dihedral: return build::dihedral(spec.a, order_cap);
        case K::GeneralizedQuaternion: return build::generalized_quaternion(spec.a, order_cap);
        case K::DirectProduct:
            return build::direct_product(build_group(*spec.left, order_cap), build_group(*spec.right, order_cap),
                                         order_cap);
        case K::SemidirectCyclic: return build::semidirect_cyclic(spec.a, spec.b, spec.c, order_cap);
        case K::ModularP3: return build::modular_p3(spec.a, order_cap);
        case K::Extraspecial: return build::extraspecial(spec.a, spec.b, spec.exponent_p, order_cap);
        case K::WreathCyclic: return build::wreath_cyclic(spec.a, order_cap);
        case K::Permutation: return group_from_permutations(spec.degree, spec.generators, "perm", order_cap);
        case K::Symmetric: return build::symmetric(spec.a, order_cap);
        case K::Alternating: return build::alternating(spec.a, order_cap);
        case K::CayleyFile: return load_group_file(spec.path);
    }
    throw InvalidSpec("unknown group spec kind");
}

} // namespace commdeg
