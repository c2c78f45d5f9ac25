#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "commdeg/errors.hpp"
#include "commdeg/group.hpp"

namespace commdeg {

/// A witness isomorphism: map[x] is the image of source element x.
struct Isomorphism {
    GroupPtr source;
    GroupPtr target;
    std::vector<Elem> map;

    Elem operator()(Elem x) const { return map[x]; }
};

namespace detail {

/// Per-element invariant used to prune candidate images: everything in the
/// tuple is preserved by isomorphisms.
using ElemSignature = std::tuple<unsigned, std::size_t, bool, bool, unsigned, unsigned>;

inline std::vector<ElemSignature> element_signatures(const GroupPtr& g) {
    auto cc = conjugacy_classes(*g);
    Subgroup z = center(g);
    Subgroup d = derived_subgroup(g);
    std::vector<ElemSignature> out(g->order());
    for (std::size_t x = 0; x < g->order(); ++x) {
        Elem e = static_cast<Elem>(x);
        out[x] = {g->element_order(e), cc.classes[static_cast<std::size_t>(cc.class_of[e])].size(),
                  z.contains(e), d.contains(e), g->element_order(g->mul(e, e)),
                  g->element_order(g->mul(g->mul(e, e), e))};
    }
    return out;
}

/// Greedy generating sequence: each new generator lies outside the closure of
/// the previous ones; rarer signatures are preferred to cut branching.
inline std::vector<Elem> generating_sequence(const GroupPtr& g,
                                             const std::vector<ElemSignature>& sig) {
    std::map<ElemSignature, std::size_t> freq;
    for (const auto& s : sig) ++freq[s];
    std::vector<Elem> gens;
    std::vector<Elem> closed{0};
    std::vector<bool> in(g->order(), false);
    in[0] = true;
    while (closed.size() < g->order()) {
        Elem best = 0;
        bool have = false;
        for (std::size_t x = 0; x < g->order(); ++x) {
            if (in[x]) continue;
            if (!have || std::make_pair(freq[sig[x]], x) <
                             std::make_pair(freq[sig[best]], static_cast<std::size_t>(best))) {
                best = static_cast<Elem>(x);
                have = true;
            }
        }
        gens.push_back(best);
        std::vector<Elem> gg = gens;
        closed = closure(*g, gg);
        std::fill(in.begin(), in.end(), false);
        for (Elem e : closed) in[e] = true;
    }
    return gens;
}

/// Extends a partial homomorphism (defined on the subgroup generated by the
/// already-mapped generators) with gen -> image. Returns false on conflict.
inline bool extend_partial_map(const FiniteGroup& g, const FiniteGroup& h, std::vector<int>& map,
                               std::vector<bool>& image_used, std::vector<Elem>& domain, Elem gen,
                               Elem image) {
    if (map[gen] != -1) return map[gen] == image;
    if (image_used[image]) return false;
    map[gen] = image;
    image_used[image] = true;
    domain.push_back(gen);
    std::vector<Elem> frontier{gen};
    while (!frontier.empty()) {
        std::vector<Elem> next;
        for (Elem a : frontier) {
            // products with every currently mapped element, both orders
            for (std::size_t i = 0; i < domain.size(); ++i) {
                Elem b = domain[i];
                for (auto [x, y] : {std::pair<Elem, Elem>{a, b}, std::pair<Elem, Elem>{b, a}}) {
                    Elem prod = g.mul(x, y);
                    Elem img = h.mul(static_cast<Elem>(map[x]), static_cast<Elem>(map[y]));
                    if (map[prod] == -1) {
                        if (image_used[img]) return false;
                        map[prod] = img;
                        image_used[img] = true;
                        domain.push_back(prod);
                        next.push_back(prod);
                    } else if (map[prod] != img) {
                        return false;
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return true;
}

struct IsoSearch {
    GroupPtr g, h;
    std::vector<ElemSignature> sig_g, sig_h;
    std::vector<Elem> gens;
    long long budget;
    std::function<bool(const std::vector<Elem>&)> on_found; // return true to stop

    bool coarse_invariants_match() const {
        if (g->order() != h->order()) return false;
        auto multiset = [](std::vector<ElemSignature> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        if (multiset(sig_g) != multiset(sig_h)) return false;
        auto class_sizes = [](const GroupPtr& x) {
            auto cc = conjugacy_classes(*x);
            std::vector<std::size_t> s;
            for (const auto& c : cc.classes) s.push_back(c.size());
            return s; // canonical order is already sorted by size
        };
        if (class_sizes(g) != class_sizes(h)) return false;
        if (center(g).order() != center(h).order()) return false;
        if (derived_subgroup(g).order() != derived_subgroup(h).order()) return false;
        return true;
    }

    bool run(std::size_t depth, std::vector<int>& map, std::vector<bool>& used,
             std::vector<Elem>& domain) {
        if (depth == gens.size()) {
            if (domain.size() != g->order()) return false; // not surjective (cannot happen)
            std::vector<Elem> full(g->order());
            for (std::size_t x = 0; x < g->order(); ++x) full[x] = static_cast<Elem>(map[x]);
            return on_found(full);
        }
        Elem gen = gens[depth];
        if (map[gen] != -1) return run(depth + 1, map, used, domain); // already forced
        for (std::size_t y = 0; y < h->order(); ++y) {
            if (used[y] || sig_h[y] != sig_g[gen]) continue;
            if (--budget < 0) throw SearchBudgetExceeded("isomorphism search budget exhausted");
            std::vector<int> map2 = map;
            std::vector<bool> used2 = used;
            std::vector<Elem> domain2 = domain;
            if (!extend_partial_map(*g, *h, map2, used2, domain2, gen, static_cast<Elem>(y))) continue;
            if (run(depth + 1, map2, used2, domain2)) return true;
        }
        return false;
    }
};

} // namespace detail

/// Verifies that `map` is a bijective homomorphism fixing the identity.
inline bool verify_isomorphism(const FiniteGroup& g, const FiniteGroup& h, const std::vector<Elem>& map) {
    if (map.size() != g.order() || g.order() != h.order()) return false;
    if (map[0] != 0) return false;
    std::vector<bool> used(h.order(), false);
    for (Elem y : map) {
        if (used[y]) return false;
        used[y] = true;
    }
    for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = 0; y < g.order(); ++y)
            if (map[g.mul(static_cast<Elem>(x), static_cast<Elem>(y))] !=
                h.mul(map[x], map[y]))
                return false;
    return true;
}

/// Finds one isomorphism G -> H, or nullopt if none exists. The search prunes
/// by order, element-order profile, class-size multiset, |Z| and |G'|, and
/// per-element signatures; the first witness in the deterministic enumeration
/// order is returned. Throws SearchBudgetExceeded when inconclusive.
inline std::optional<Isomorphism> find_isomorphism(const GroupPtr& g, const GroupPtr& h,
                                                   long long node_budget = 10000000) {
    if (g.get() == h.get()) {
        Isomorphism id{g, h, {}};
        id.map.resize(g->order());
        for (std::size_t i = 0; i < g->order(); ++i) id.map[i] = static_cast<Elem>(i);
        return id;
    }
    detail::IsoSearch search;
    search.g = g;
    search.h = h;
    search.sig_g = detail::element_signatures(g);
    search.sig_h = detail::element_signatures(h);
    search.budget = node_budget;
    if (!search.coarse_invariants_match()) return std::nullopt;
    search.gens = detail::generating_sequence(g, search.sig_g);

    std::optional<Isomorphism> found;
    search.on_found = [&](const std::vector<Elem>& map) {
        if (!verify_isomorphism(*g, *h, map)) throw NumericalFailure("isomorphism witness failed verification");
        found = Isomorphism{g, h, map};
        return true;
    };
    std::vector<int> map(g->order(), -1);
    std::vector<bool> used(h->order(), false);
    std::vector<Elem> domain;
    map[0] = 0;
    used[0] = true;
    domain.push_back(0);
    search.run(0, map, used, domain);
    return found;
}

/// Enumerates isomorphisms G -> H in deterministic order until the callback
/// returns true. Returns whether the enumeration was stopped by the callback.
inline bool for_each_isomorphism(const GroupPtr& g, const GroupPtr& h,
                                 const std::function<bool(const std::vector<Elem>&)>& cb,
                                 long long node_budget = 10000000) {
    detail::IsoSearch search;
    search.g = g;
    search.h = h;
    search.sig_g = detail::element_signatures(g);
    search.sig_h = detail::element_signatures(h);
    search.budget = node_budget;
    if (!search.coarse_invariants_match()) return false;
    search.gens = detail::generating_sequence(g, search.sig_g);
    search.on_found = [&](const std::vector<Elem>& map) {
        if (!verify_isomorphism(*g, *h, map)) throw NumericalFailure("isomorphism witness failed verification");
        return cb(map);
    };
    std::vector<int> map(g->order(), -1);
    std::vector<bool> used(h->order(), false);
    std::vector<Elem> domain;
    map[0] = 0;
    used[0] = true;
    domain.push_back(0);
    return search.run(0, map, used, domain);
}

inline bool isomorphic(const GroupPtr& g, const GroupPtr& h, long long node_budget = 10000000) {
    return find_isomorphism(g, h, node_budget).has_value();
}

} // namespace commdeg
