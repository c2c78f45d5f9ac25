#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "commdeg/characters.hpp"
#include "commdeg/errors.hpp"
#include "commdeg/group.hpp"
#include "commdeg/group_build.hpp"
#include "commdeg/rational.hpp"
#include "commdeg/words.hpp"

namespace commdeg {

struct PrOptions {
    BigInt budget{1000000000};
    unsigned jobs = 1;
};

/// Number of commuting pairs (x, y) in H x K.
inline BigInt commuting_pairs(const Subgroup& h, const Subgroup& k) {
    if (!same_group(h.parent(), k.parent())) throw ParentMismatch("subgroups of different groups");
    const FiniteGroup& g = *h.parent();
    BigInt count = 0;
    for (Elem x : h.elements())
        for (Elem y : k.elements())
            if (g.mul(x, y) == g.mul(y, x)) ++count;
    return count;
}

/// Pr(G): commuting-pair count over |G|^2, cross-checked against k(G)/|G|.
inline Rational pr(const GroupPtr& g) {
    BigInt pairs = 0;
    for (std::size_t x = 0; x < g->order(); ++x)
        for (std::size_t y = 0; y < g->order(); ++y)
            if (g->mul(static_cast<Elem>(x), static_cast<Elem>(y)) ==
                g->mul(static_cast<Elem>(y), static_cast<Elem>(x)))
                ++pairs;
    Rational counted(pairs, big_pow(BigInt(g->order()), 2));
    Rational by_classes(BigInt(conjugacy_classes(*g).k()), BigInt(g->order()));
    if (counted != by_classes)
        throw NumericalFailure("Pr(G) counting route disagrees with k(G)/|G|");
    return counted;
}

/// The commutator-word fiber zeta(g) for all g, memoized per group.
inline const std::vector<BigInt>& commutator_fiber(const GroupPtr& g, const PrOptions& opts = {}) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::shared_ptr<const std::vector<BigInt>>> cache;
    std::uint64_t key = g->content_hash();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto fiber = std::make_shared<std::vector<BigInt>>(
        word_fiber(AdmissibleWord::commutator().word(), *g, 2, opts.budget, opts.jobs));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, fiber);
    return *it->second;
}

/// Pr_g(G) = zeta(g)/|G|^2, counted from the commutator word; cross-checked
/// against the Frobenius character formula when a table is available.
inline Rational pr_g(const GroupPtr& g, Elem e, const PrOptions& opts = {}, bool character_check = true) {
    g->check_element(e);
    const auto& fiber = commutator_fiber(g, opts);
    if (character_check && g->order() <= 2000) {
        if (frobenius_zeta(g, e) != fiber[e])
            throw NumericalFailure("Frobenius formula disagrees with the counted commutator fiber");
    }
    return Rational(fiber[e], big_pow(BigInt(g->order()), 2));
}

/// Pr_g(H, K): probability that [x, y] = g over H x K. Brute force and the
/// centralizer-sum formula are both evaluated (within budget) and must agree.
inline Rational pr_hk(const Subgroup& h, const Subgroup& k, Elem g, const PrOptions& opts = {}) {
    if (!same_group(h.parent(), k.parent())) throw ParentMismatch("subgroups of different groups");
    const GroupPtr& gp = h.parent();
    gp->check_element(g);
    const FiniteGroup& gg = *gp;

    // sum over x in H with g^{-1} x in Cl_K(x) of |C_K(x)|
    BigInt fast = 0;
    for (Elem x : h.elements()) {
        Elem target = gg.mul(gg.inv(g), x);
        bool in_class = false;
        std::size_t centralizer_size = 0;
        for (Elem y : k.elements()) {
            if (gg.conj(y, x) == target) in_class = true;
            if (gg.mul(y, x) == gg.mul(x, y)) ++centralizer_size;
        }
        if (in_class) fast += BigInt(centralizer_size);
    }
    Rational formula(fast, BigInt(h.order()) * BigInt(k.order()));

    if (BigInt(h.order()) * BigInt(k.order()) <= BigInt(1000000)) {
        BigInt brute = 0;
        for (Elem x : h.elements())
            for (Elem y : k.elements())
                if (gg.commutator(x, y) == g) ++brute;
        Rational counted(brute, BigInt(h.order()) * BigInt(k.order()));
        if (counted != formula)
            throw NumericalFailure("Pr_g(H,K) centralizer formula disagrees with brute force");
    }
    (void)opts;
    return formula;
}

inline Rational pr_hk(const Subgroup& h, const Subgroup& k, const PrOptions& opts = {}) {
    return pr_hk(h, k, 0, opts);
}

/// Pr^omega_g(G) for an admissible word: exact fiber ratio.
inline Rational pr_word(const GroupPtr& g, const AdmissibleWord& w, Elem e, unsigned n,
                        const PrOptions& opts = {}) {
    g->check_element(e);
    BigInt count = count_solutions(w, *g, e, n, opts.budget, opts.jobs);
    return Rational(count, big_pow(BigInt(g->order()), n));
}

// ---------------------------------------------------------------------------
// The generalized-commutator probability Pr^n_g. Its fiber has Fourier
// coefficients (|G|/chi(1))^{n-1}. For even n this equals the fiber of the
// word x1..xn x1^-1..xn^-1 and is computed by an exact integer convolution
// chain anchored at the enumerated commutator fiber. Odd n has no word-count
// realization (a change of free-group variables turns the odd-length word
// into an even one with a free coordinate, which scales differently), so odd
// n is evaluated through the character sum behind a validation gate.
// ---------------------------------------------------------------------------

/// Exact convolution (a * b)(g) = sum_{xy=g} a(x) b(y).
inline std::vector<BigInt> fiber_convolution(const FiniteGroup& g, const std::vector<BigInt>& a,
                                             const std::vector<BigInt>& b) {
    std::vector<BigInt> out(g.order(), BigInt(0));
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (a[x] == 0) continue;
        for (std::size_t y = 0; y < g.order(); ++y) {
            if (b[y] == 0) continue;
            out[g.mul(static_cast<Elem>(x), static_cast<Elem>(y))] += a[x] * b[y];
        }
    }
    return out;
}

/// Character-sum route: zeta_n(g) = sum_chi (|G|/chi(1))^{n-1} chi(g),
/// snapped to integers.
inline std::vector<BigInt> generalized_commutator_fiber_spectral(const GroupPtr& g, unsigned n) {
    CharacterTable t = character_table(g);
    std::vector<BigInt> out(g->order());
    std::vector<double> coeff(t.k());
    for (std::size_t i = 0; i < t.k(); ++i) {
        double c = 1;
        for (unsigned j = 0; j + 1 < n; ++j) c *= static_cast<double>(g->order()) / t.degrees[i];
        coeff[i] = c;
    }
    for (std::size_t cls = 0; cls < t.k(); ++cls) {
        Complex s = 0;
        for (std::size_t i = 0; i < t.k(); ++i) s += coeff[i] * t.value(i, cls);
        if (std::abs(s.imag()) > 1e-4)
            throw NumericalFailure("generalized commutator count has nonreal value");
        BigInt v = snap_to_integer(s.real());
        if (v < 0) throw NumericalFailure("generalized commutator count is negative");
        for (Elem e : t.classes->classes[cls]) out[e] = v;
    }
    return out;
}

enum class SpectralGate { Unvalidated, Enabled, Disabled };

inline SpectralGate& spectral_gate_state() {
    static SpectralGate state = SpectralGate::Unvalidated;
    return state;
}

inline std::string& spectral_gate_report() {
    static std::string report;
    return report;
}

namespace detail {

inline std::vector<BigInt> conv_chain_fiber(const GroupPtr& g, unsigned n, const PrOptions& opts) {
    // even n >= 2: zeta_n = zeta_2 convolved (n/2 - 1) times with itself
    const auto& base = commutator_fiber(g, opts);
    std::vector<BigInt> cur = base;
    for (unsigned m = 2; m + 2 <= n; m += 2) cur = fiber_convolution(*g, cur, base);
    return cur;
}

inline std::vector<GroupPtr> default_gate_groups() {
    std::vector<GroupPtr> out;
    for (long long n : {1, 2, 3, 4, 5, 6, 8, 9, 12}) out.push_back(build::cyclic(n, 10000));
    out.push_back(build::direct_product(build::cyclic(2, 100), build::cyclic(2, 100), 10000));
    out.push_back(build::direct_product(build::cyclic(2, 100), build::cyclic(4, 100), 10000));
    out.push_back(build::symmetric(3, 10000));
    out.push_back(build::symmetric(4, 10000));
    out.push_back(build::alternating(4, 10000));
    out.push_back(build::dihedral(8, 10000));
    out.push_back(build::dihedral(10, 10000));
    out.push_back(build::dihedral(12, 10000));
    out.push_back(build::dihedral(16, 10000));
    out.push_back(build::dihedral(24, 10000));
    out.push_back(build::generalized_quaternion(8, 10000));
    out.push_back(build::generalized_quaternion(16, 10000));
    out.push_back(build::dicyclic(3, "Dic3", 10000));
    out.push_back(build::dicyclic(6, "Dic6", 10000));
    out.push_back(build::semidirect_cyclic(8, 2, 3, 10000));
    out.push_back(build::semidirect_cyclic(8, 2, 5, 10000));
    out.push_back(build::semidirect_cyclic(7, 3, 2, 10000));
    out.push_back(build::semidirect_cyclic(3, 8, 2, 10000));
    out.push_back(build::semidirect_cyclic(5, 4, 2, 10000));
    out.push_back(build::direct_product(build::cyclic(3, 100), build::dihedral(8, 100), 10000));
    out.push_back(build::direct_product(build::cyclic(2, 100), build::alternating(4, 100), 10000));
    return out;
}

} // namespace detail

/// Validates the character route against enumerated word fibers on small
/// groups: even n <= 4 must match the literal word fiber exactly, and odd
/// n = 3 must be consistent with the convolution identity
/// conv(zeta_3, zeta_2) = zeta_5. Any mismatch disables the route globally.
inline bool validate_spectral_gate(const std::vector<GroupPtr>& groups, const PrOptions& opts = {}) {
    AdmissibleWord commutator = AdmissibleWord::commutator();
    for (const GroupPtr& g : groups) {
        if (g->order() > 24) continue;
        for (unsigned n : {2u, 4u}) {
            std::vector<Syllable> sylls;
            for (unsigned i = 1; i <= n; ++i) sylls.push_back({i, 1});
            for (unsigned i = 1; i <= n; ++i) sylls.push_back({i, -1});
            auto literal = word_fiber(Word(sylls), *g, n, opts.budget, opts.jobs);
            auto spectral = generalized_commutator_fiber_spectral(g, n);
            if (literal != spectral) {
                spectral_gate_state() = SpectralGate::Disabled;
                spectral_gate_report() = "character route disagrees with the enumerated word fiber on " +
                                         g->name() + " at n=" + std::to_string(n);
                return false;
            }
        }
        auto z2 = commutator_fiber(g, opts);
        auto z3 = generalized_commutator_fiber_spectral(g, 3);
        auto z5 = generalized_commutator_fiber_spectral(g, 5);
        if (fiber_convolution(*g, z3, z2) != z5) {
            spectral_gate_state() = SpectralGate::Disabled;
            spectral_gate_report() =
                "character route fails the convolution consistency check on " + g->name();
            return false;
        }
        BigInt total = 0;
        for (const BigInt& v : z3) total += v;
        if (total != big_pow(BigInt(g->order()), 3)) {
            spectral_gate_state() = SpectralGate::Disabled;
            spectral_gate_report() = "odd-n counts do not sum to |G|^n on " + g->name();
            return false;
        }
    }
    spectral_gate_state() = SpectralGate::Enabled;
    spectral_gate_report() = "validated on " + std::to_string(groups.size()) + " groups";
    return true;
}

/// zeta_n fiber of the generalized commutator probability (all g at once).
inline std::vector<BigInt> generalized_commutator_fiber(const GroupPtr& g, unsigned n,
                                                        const PrOptions& opts = {}) {
    if (n < 2) throw InvalidSpec("generalized commutator requires n >= 2");
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const std::vector<BigInt>>> cache;
    auto key = std::make_pair(g->content_hash(), n);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    std::vector<BigInt> fiber;
    if (n % 2 == 0) {
        fiber = detail::conv_chain_fiber(g, n, opts);
    } else {
        if (spectral_gate_state() == SpectralGate::Unvalidated)
            validate_spectral_gate(detail::default_gate_groups(), opts);
        if (spectral_gate_state() == SpectralGate::Disabled)
            throw NumericalFailure("character route disabled: " + spectral_gate_report());
        fiber = generalized_commutator_fiber_spectral(g, n);
    }
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, std::make_shared<const std::vector<BigInt>>(fiber));
    return *it->second;
}

/// Pr^n_g(G) = zeta_n(g) / |G|^n.
inline Rational pr_n_g(const GroupPtr& g, unsigned n, Elem e, const PrOptions& opts = {}) {
    g->check_element(e);
    auto fiber = generalized_commutator_fiber(g, n, opts);
    return Rational(fiber[e], big_pow(BigInt(g->order()), n));
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

struct Theorem226Report {
    bool applicable = false;
    long long p = 0;
    bool centralizer_abelian = false;
    long long s = 0;                       // p^{2s} = |C_G(G') : Z(C_G(G'))|
    Rational predicted_pr;
    std::vector<BigInt> predicted_center_index; // allowed values of |G/Z|
    Rational measured_pr;
    BigInt measured_center_index;
    bool pr_matches = false;
    bool center_index_matches = false;
    bool index_equalities_hold = false; // |G/(G' cap Z) : Z(...)| = |(G/Z) : Z(G/Z)| = p^2
    bool passed = false;
};

inline Theorem226Report theorem_2_2_6_check(const GroupPtr& g) {
    Theorem226Report out;
    Subgroup der = derived_subgroup(g);
    Subgroup zen = center(g);
    std::vector<Elem> inter;
    for (Elem e : der.elements())
        if (zen.contains(e)) inter.push_back(e);

    long long dsize = static_cast<long long>(der.order());
    long long p = smallest_prime_divisor(dsize == 1 ? 2 : dsize);
    if (dsize != p * p) return out;
    if (static_cast<long long>(inter.size()) != p) return out;
    if (std::gcd(p - 1, static_cast<long long>(g->order())) != 1) return out;
    out.applicable = true;
    out.p = p;

    Subgroup cgd = subgroup_centralizer(Subgroup::whole(g), der);
    GroupPtr c_as_group = subgroup_as_group(cgd, "C_G(G')");
    out.centralizer_abelian = is_abelian(*c_as_group);
    std::size_t czc = c_as_group->order() / center(c_as_group).order(); // |C : Z(C)|
    long long s = 0;
    {
        std::size_t v = czc;
        while (v > 1) {
            if (v % (p * p) != 0) break;
            v /= static_cast<std::size_t>(p * p);
            ++s;
        }
        if (czc != 1) {
            // czc must be p^{2s}
            std::size_t check = 1;
            for (long long i = 0; i < 2 * s; ++i) check *= static_cast<std::size_t>(p);
            if (check != czc) s = -1;
        }
    }
    out.s = s;

    if (out.centralizer_abelian) {
        out.predicted_pr = Rational(2 * p * p - 1, p * p * p * p);
        out.predicted_center_index = {BigInt(p * p * p)};
    } else {
        if (s <= 0) return out; // malformed; leaves passed = false
        // (1/p^4) ((p-1)/p^{2s-1} + p^2 + p - 1)
        Rational inner = Rational(p - 1, 1) / Rational(big_pow(BigInt(p), static_cast<unsigned>(2 * s - 1)));
        inner += Rational(p * p + p - 1, 1);
        out.predicted_pr = inner / Rational(big_pow(BigInt(p), 4));
        out.predicted_center_index = {big_pow(BigInt(p), static_cast<unsigned>(2 * s + 2)),
                                      big_pow(BigInt(p), static_cast<unsigned>(2 * s + 3))};
    }

    out.measured_pr = pr(g);
    out.measured_center_index = BigInt(g->order() / zen.order());
    out.pr_matches = out.measured_pr == out.predicted_pr;
    out.center_index_matches = false;
    for (const BigInt& v : out.predicted_center_index)
        if (v == out.measured_center_index) out.center_index_matches = true;

    // |G/(G' cap Z) : Z(G/(G' cap Z))| = |(G/Z) : Z(G/Z)| = p^2
    auto central_index_of_quotient = [&](const Subgroup& n) {
        auto q = quotient(g, n);
        return BigInt(q.group->order() / center(q.group).order());
    };
    BigInt i1 = central_index_of_quotient(Subgroup(g, inter));
    BigInt i2 = central_index_of_quotient(zen);
    out.index_equalities_hold = (i1 == BigInt(p * p)) && (i2 == BigInt(p * p));

    out.passed = out.pr_matches && out.center_index_matches && out.index_equalities_hold;
    return out;
}

/// Prop 4.4.3: G nonabelian, G' <= Z(G), |G'| = p prime. Predictions for
/// Pr^n_g at g = 1 and g != 1, with k = (1/2) log_p |G : Z(G)|.
struct Prop443Form {
    bool applicable = false;
    long long p = 0, k = 0;
    Rational at_identity, elsewhere;
};

inline Prop443Form prop_4_4_3_form(const GroupPtr& g, unsigned n) {
    Prop443Form out;
    if (is_abelian(*g)) return out;
    Subgroup der = derived_subgroup(g);
    Subgroup zen = center(g);
    long long p = static_cast<long long>(der.order());
    if (!is_prime(p)) return out;
    for (Elem e : der.elements())
        if (!zen.contains(e)) return out;
    std::size_t idx = g->order() / zen.order();
    long long k = 0;
    std::size_t v = idx;
    while (v > 1 && v % static_cast<std::size_t>(p * p) == 0) {
        v /= static_cast<std::size_t>(p * p);
        ++k;
    }
    if (v != 1) return out; // |G:Z| is not an even power of p
    out.applicable = true;
    out.p = p;
    out.k = k;
    BigInt pnk = big_pow(BigInt(p), static_cast<unsigned>(n) * static_cast<unsigned>(k));
    out.at_identity = Rational(1, p) * (Rational(1) + Rational(BigInt(p - 1), pnk));
    out.elsewhere = Rational(1, p) * (Rational(1) - Rational(BigInt(1), pnk));
    return out;
}

/// Prop 4.4.5 / 4.4.6 closed form for parameters (p, s):
/// (s^n + p - 1)/(p s^n) at the identity and (s^n - 1)/(p s^n) elsewhere.
struct SemidirectForm {
    Rational at_identity, elsewhere;
};

inline SemidirectForm semidirect_closed_form(long long p, long long s, unsigned n) {
    BigInt sn = big_pow(BigInt(s), n);
    SemidirectForm out;
    out.at_identity = Rational(sn + (p - 1), BigInt(p) * sn);
    out.elsewhere = Rational(sn - 1, BigInt(p) * sn);
    return out;
}

/// Prop 4.3.7 target value (p^n + p - 1)/p^{n+1} for the smallest prime p.
inline Rational prop_4_3_7_value(long long p, unsigned n) {
    return Rational(big_pow(BigInt(p), n) + (p - 1), big_pow(BigInt(p), n + 1));
}

/// Thm 2.4.1 lower bound (1/|G'|)(1 + (|G'|-1)/|G:Z|).
inline Rational thm_2_4_1_bound(const GroupPtr& g) {
    BigInt dsize(derived_subgroup(g).order());
    BigInt index(g->order() / center(g).order());
    return Rational(1, dsize) * (Rational(1) + Rational(dsize - 1, index));
}

} // namespace commdeg
