#pragma once

#include <optional>
#include <string>
#include <vector>

#include "commdeg/errors.hpp"
#include "commdeg/group.hpp"
#include "commdeg/isomorphism.hpp"
#include "commdeg/probability.hpp"
#include "commdeg/words.hpp"

namespace commdeg {

/// The commutator map a_G : G/Z x G/Z -> G', tabulated on coset pairs.
/// Well-definedness (independence of representatives) is fully checked.
struct CommutatorMap {
    GroupPtr group;
    GroupPtr central_quotient;
    std::vector<Elem> projection; // element -> coset id
    Subgroup derived;
    std::vector<Elem> table; // (coset a, coset b) -> element of G' (parent id)

    Elem at(Elem coset_a, Elem coset_b) const {
        return table[static_cast<std::size_t>(coset_a) * central_quotient->order() + coset_b];
    }
};

inline CommutatorMap commutator_map(const GroupPtr& g) {
    auto q = quotient(g, center(g));
    std::size_t m = q.group->order();
    CommutatorMap out{g, q.group, q.projection, derived_subgroup(g), {}};
    out.table.assign(m * m, 0);
    std::vector<bool> defined(m * m, false);
    for (std::size_t x = 0; x < g->order(); ++x)
        for (std::size_t y = 0; y < g->order(); ++y) {
            Elem c = g->commutator(static_cast<Elem>(x), static_cast<Elem>(y));
            std::size_t idx = static_cast<std::size_t>(q.projection[x]) * m + q.projection[y];
            if (!defined[idx]) {
                defined[idx] = true;
                out.table[idx] = c;
            } else if (out.table[idx] != c) {
                throw ValidationError("commutator map is not well defined on cosets");
            }
        }
    return out;
}

/// An isoclinism witness: phi on central quotients, psi on derived subgroups
/// (psi maps parent element ids of G' to parent element ids of H').
struct IsoclinismWitness {
    GroupPtr g, h;
    std::vector<Elem> phi; // coset id of G/Z -> coset id of H/Z
    std::vector<int> psi;  // g-element id -> h-element id (-1 off G')

    Elem map_derived(Elem x) const {
        if (psi[x] < 0) throw ElementOutOfRange("element not in the derived subgroup");
        return static_cast<Elem>(psi[x]);
    }
};

namespace detail {

/// Given phi, reads psi off the commuting square on the image of a_G, then
/// closes it under products. Returns false on any conflict.
inline bool derive_psi(const CommutatorMap& cg, const CommutatorMap& ch, const std::vector<Elem>& phi,
                       std::vector<int>& psi) {
    const FiniteGroup& g = *cg.group;
    const FiniteGroup& h = *ch.group;
    psi.assign(g.order(), -1);
    std::vector<bool> used(h.order(), false);
    std::vector<Elem> domain;
    auto set_pair = [&](Elem a, Elem b) {
        if (psi[a] != -1) return psi[a] == static_cast<int>(b);
        if (used[b]) return false;
        psi[a] = b;
        used[b] = true;
        domain.push_back(a);
        return true;
    };
    std::size_t m = cg.central_quotient->order();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Elem src = cg.at(static_cast<Elem>(a), static_cast<Elem>(b));
            Elem dst = ch.at(phi[a], phi[b]);
            if (!set_pair(src, dst)) return false;
        }
    // close under products: the commutator values generate G'
    std::size_t head = 0;
    while (head < domain.size()) {
        Elem a = domain[head++];
        for (std::size_t i = 0; i < domain.size(); ++i) {
            Elem b = domain[i];
            for (auto [x, y] : {std::pair<Elem, Elem>{a, b}, std::pair<Elem, Elem>{b, a}}) {
                Elem prod = g.mul(x, y);
                Elem img = h.mul(static_cast<Elem>(psi[x]), static_cast<Elem>(psi[y]));
                if (psi[prod] == -1) {
                    if (used[img]) return false;
                    psi[prod] = img;
                    used[img] = true;
                    domain.push_back(prod);
                } else if (psi[prod] != static_cast<int>(img)) {
                    return false;
                }
            }
        }
    }
    if (domain.size() != cg.derived.order()) return false;
    // bijection onto H' and homomorphism property
    for (Elem x : cg.derived.elements()) {
        if (psi[x] < 0) return false;
        if (!ch.derived.contains(static_cast<Elem>(psi[x]))) return false;
    }
    for (Elem x : cg.derived.elements())
        for (Elem y : cg.derived.elements())
            if (psi[g.mul(x, y)] != static_cast<int>(h.mul(static_cast<Elem>(psi[x]),
                                                           static_cast<Elem>(psi[y]))))
                return false;
    return true;
}

} // namespace detail

/// Searches for an isoclinism witness by enumerating isomorphisms of the
/// central quotients; psi is determined by the commuting square once phi is
/// fixed, then verified. The first witness in enumeration order is returned.
inline std::optional<IsoclinismWitness> find_isoclinism(const GroupPtr& g, const GroupPtr& h,
                                                        long long phi_budget = 10000000) {
    CommutatorMap cg = commutator_map(g);
    CommutatorMap ch = commutator_map(h);
    if (cg.derived.order() != ch.derived.order()) return std::nullopt;
    if (cg.central_quotient->order() != ch.central_quotient->order()) return std::nullopt;

    std::optional<IsoclinismWitness> witness;
    for_each_isomorphism(
        cg.central_quotient, ch.central_quotient,
        [&](const std::vector<Elem>& phi) {
            std::vector<int> psi;
            if (!detail::derive_psi(cg, ch, phi, psi)) return false;
            witness = IsoclinismWitness{g, h, phi, psi};
            return true;
        },
        phi_budget);
    return witness;
}

struct InvarianceReport {
    bool checked = false;
    bool holds = false;
    std::size_t values_compared = 0;
    std::string detail;
};

/// Prop 4.1.3 instance: Pr^w_g(G) = Pr^w_{psi(g)}(H) for every g in G'.
inline InvarianceReport verify_invariance(const IsoclinismWitness& witness, const AdmissibleWord& w,
                                          unsigned n, const PrOptions& opts = {}) {
    InvarianceReport out;
    Subgroup der_g = derived_subgroup(witness.g);
    auto fiber_g = word_fiber(w.word(), *witness.g, n, opts.budget, opts.jobs);
    auto fiber_h = word_fiber(w.word(), *witness.h, n, opts.budget, opts.jobs);
    BigInt gn = big_pow(BigInt(witness.g->order()), n);
    BigInt hn = big_pow(BigInt(witness.h->order()), n);
    out.checked = true;
    out.holds = true;
    for (Elem x : der_g.elements()) {
        Elem y = witness.map_derived(x);
        ++out.values_compared;
        if (Rational(fiber_g[x], gn) != Rational(fiber_h[y], hn)) {
            out.holds = false;
            out.detail = "mismatch at derived element " + std::to_string(x);
            return out;
        }
    }
    return out;
}

} // namespace commdeg
