#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "commdeg/errors.hpp"
#include "commdeg/group.hpp"

namespace commdeg {

/// A permutation of 0..degree-1 given by its image array.
using Perm = std::vector<int>;

inline void check_permutation(const Perm& p, std::size_t degree) {
    if (p.size() != degree) throw ValidationError("permutation degree mismatch");
    std::vector<bool> seen(degree, false);
    for (int v : p) {
        if (v < 0 || static_cast<std::size_t>(v) >= degree || seen[v])
            throw ValidationError("generator is not a bijection on 0..degree-1");
        seen[v] = true;
    }
}

inline Perm perm_compose(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

/// Builds the group generated by the given permutations. Elements are the
/// closure in lexicographic order, which places the identity at id 0.
inline GroupPtr group_from_permutations(std::size_t degree, const std::vector<Perm>& gens,
                                        const std::string& name,
                                        std::size_t order_cap = FiniteGroup::kDefaultOrderCap) {
    if (degree == 0) throw InvalidSpec("permutation degree must be positive");
    for (const Perm& p : gens) check_permutation(p, degree);

    Perm ident(degree);
    for (std::size_t i = 0; i < degree; ++i) ident[i] = static_cast<int>(i);

    std::map<Perm, int> seen;
    std::vector<Perm> elems{ident};
    seen.emplace(ident, 0);
    std::vector<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : frontier) {
            for (const Perm& g : gens) {
                Perm q = perm_compose(elems[i], g);
                if (seen.emplace(q, static_cast<int>(elems.size())).second) {
                    elems.push_back(q);
                    next.push_back(elems.size() - 1);
                    if (elems.size() > order_cap)
                        throw OrderOverflow("generated permutation group exceeds order cap " +
                                            std::to_string(order_cap));
                }
            }
        }
        frontier = std::move(next);
    }

    std::sort(elems.begin(), elems.end());
    std::map<Perm, Elem> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], static_cast<Elem>(i));
    std::size_t n = elems.size();
    std::vector<Elem> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            table[a * n + b] = index.at(perm_compose(elems[a], elems[b]));
    return make_group(n, std::move(table), name);
}

} // namespace commdeg
