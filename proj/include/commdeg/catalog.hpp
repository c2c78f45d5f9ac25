#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "commdeg/group_build.hpp"
#include "commdeg/group_io.hpp"

namespace commdeg {

namespace fixtures {

/// SL(2,3) acting on the eight nonzero vectors of F_3^2.
inline GroupPtr sl_2_3() {
    std::vector<std::pair<int, int>> vecs;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            if (x || y) vecs.emplace_back(x, y);
    auto index = [&](int x, int y) {
        for (std::size_t i = 0; i < vecs.size(); ++i)
            if (vecs[i].first == x && vecs[i].second == y) return static_cast<int>(i);
        throw ValidationError("vector lookup failed");
    };
    auto mat_perm = [&](int a, int b, int c, int d) {
        Perm p(vecs.size());
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            auto [x, y] = vecs[i];
            p[i] = index(((a * x + b * y) % 3 + 3) % 3, ((c * x + d * y) % 3 + 3) % 3);
        }
        return p;
    };
    return group_from_permutations(vecs.size(), {mat_perm(1, 1, 0, 1), mat_perm(0, -1, 1, 0)},
                                   "SL(2,3)");
}

/// Generalized dihedral group A x| C2 with the inverting action.
inline GroupPtr generalized_dihedral(const GroupPtr& a, const std::string& name) {
    std::vector<std::vector<Elem>> action(2);
    action[0].resize(a->order());
    action[1].resize(a->order());
    for (std::size_t x = 0; x < a->order(); ++x) {
        action[0][x] = static_cast<Elem>(x);
        action[1][x] = a->inv(static_cast<Elem>(x));
    }
    return build::semidirect_with_action(a, build::cyclic(2, 4), action, name, 10000);
}

/// C3 x| D8 where the Klein subgroup {1, r^2, s, r^2 s} acts trivially and
/// the other coset inverts.
inline GroupPtr c3_semidirect_d8_klein_kernel() {
    GroupPtr c3 = build::cyclic(3, 10);
    GroupPtr d8 = build::dihedral(8, 10);
    std::vector<std::vector<Elem>> action(8, std::vector<Elem>(3));
    for (std::size_t h = 0; h < 8; ++h) {
        bool inverts = (h % 2) == 1; // rotations r, r^3 and reflections r s, r^3 s
        for (Elem x = 0; x < 3; ++x) action[h][x] = inverts ? c3->inv(x) : x;
    }
    return build::semidirect_with_action(c3, d8, action, "C3:D8(klein)", 10000);
}

/// C7 x| ES+27 acting through an index-3 quotient of the extraspecial group;
/// realizes the 29/189 classification row (G' = C21, G' cap Z = C3,
/// G/Z = C3 x (C7:C3)).
inline GroupPtr order_189_witness() {
    GroupPtr c7 = build::cyclic(7, 10);
    GroupPtr h = build::extraspecial(3, 1, true, 100);
    // index-3 normal subgroup: derived subgroup extended by a non-central
    // element, chosen deterministically
    Subgroup der = derived_subgroup(h);
    Subgroup zen = center(h);
    std::vector<Elem> gens = der.elements();
    for (std::size_t x = 1; x < h->order(); ++x) {
        if (zen.contains(static_cast<Elem>(x))) continue;
        gens.push_back(static_cast<Elem>(x));
        break;
    }
    Subgroup m(h, closure(*h, gens));
    auto q = quotient(h, m); // C3
    std::vector<std::vector<Elem>> action(h->order(), std::vector<Elem>(7));
    for (std::size_t x = 0; x < h->order(); ++x) {
        unsigned t = q.projection[x];
        long long mult = 1;
        for (unsigned i = 0; i < t; ++i) mult = (mult * 2) % 7;
        for (Elem i = 0; i < 7; ++i) action[x][i] = static_cast<Elem>((i * mult) % 7);
    }
    return build::semidirect_with_action(c7, h, action, "C7:ES+27", 10000);
}

/// (C5 x C5) x| C3 with a fixed-point-free order-3 linear action over F5;
/// realizes the 11/75 classification row.
inline GroupPtr order_75_witness() {
    GroupPtr n = build::direct_product(build::cyclic(5, 10), build::cyclic(5, 10), 100);
    GroupPtr c3 = build::cyclic(3, 10);
    // companion matrix of x^2 + x + 1: (i, j) -> (4j, i + 4j), ids are i*5+j
    auto apply = [](std::size_t id) {
        std::size_t i = id / 5, j = id % 5;
        return ((4 * j) % 5) * 5 + (i + 4 * j) % 5;
    };
    std::vector<std::vector<Elem>> action(3, std::vector<Elem>(25));
    for (std::size_t x = 0; x < 25; ++x) {
        std::size_t v = x;
        action[0][x] = static_cast<Elem>(x);
        v = apply(v);
        action[1][x] = static_cast<Elem>(v);
        v = apply(v);
        action[2][x] = static_cast<Elem>(v);
    }
    return build::semidirect_with_action(n, c3, action, "(C5xC5):C3", 10000);
}

/// Frobenius group C_p x| C_{p-1} with a primitive-root action; Pr = 1/(p-1).
inline GroupPtr frobenius_full(long long p) {
    for (long long r = 2; r < p; ++r) {
        long long ord = 1, v = r % p;
        while (v != 1) {
            v = (v * r) % p;
            ++ord;
        }
        if (ord == p - 1) return build::semidirect_cyclic(p, p - 1, r, 10000);
    }
    throw InvalidSpec("no primitive root found");
}

} // namespace fixtures

/// All abelian groups of a given order, one per isomorphism type, as direct
/// products of primary cyclic factors.
inline std::vector<GroupPtr> abelian_groups_of_order(long long n, std::size_t cap = 10000) {
    std::vector<std::pair<long long, std::vector<std::vector<int>>>> primaries;
    long long m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        // partitions of e
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        std::function<void(int, int)> rec = [&](int left, int maxpart) {
            if (left == 0) {
                parts.push_back(cur);
                return;
            }
            for (int k = std::min(left, maxpart); k >= 1; --k) {
                cur.push_back(k);
                rec(left - k, k);
                cur.pop_back();
            }
        };
        rec(e, e);
        primaries.emplace_back(p, parts);
    }
    if (m > 1) {
        primaries.emplace_back(m, std::vector<std::vector<int>>{{1}});
    }
    if (primaries.empty()) return {build::cyclic(1, cap)};
    std::vector<GroupPtr> out;
    std::function<void(std::size_t, GroupPtr)> build_rec = [&](std::size_t i, GroupPtr acc) {
        if (i == primaries.size()) {
            out.push_back(acc);
            return;
        }
        auto [p, parts] = primaries[i];
        for (const auto& part : parts) {
            GroupPtr cur = acc;
            for (int e : part) {
                long long fac = 1;
                for (int j = 0; j < e; ++j) fac *= p;
                GroupPtr cyc = build::cyclic(fac, cap);
                cur = cur ? build::direct_product(cur, cyc, cap) : cyc;
            }
            build_rec(i + 1, cur);
        }
    };
    build_rec(0, nullptr);
    return out;
}

#ifndef COMMDEG_DATA_DIR
#define COMMDEG_DATA_DIR "data"
#endif

inline std::string default_catalog_dir() { return std::string(COMMDEG_DATA_DIR) + "/catalog"; }

/// Loads every .json group file from the directory, sorted by filename.
inline std::vector<GroupPtr> load_file_catalog(const std::string& dir = default_catalog_dir()) {
    namespace fs = std::filesystem;
    std::vector<std::string> paths;
    if (!fs::exists(dir)) throw FixtureMissing("catalog directory not found: " + dir);
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    std::vector<GroupPtr> out;
    out.reserve(paths.size());
    for (const auto& p : paths) out.push_back(load_group_file(p));
    return out;
}

/// Named fixtures beyond the file catalog: symmetric/alternating groups, the
/// larger p-groups, and the classification-table witnesses.
inline std::vector<GroupPtr> named_fixtures() {
    std::vector<GroupPtr> out;
    out.push_back(build::symmetric(3, 10000));
    out.push_back(build::symmetric(4, 10000));
    out.push_back(build::symmetric(5, 10000));
    out.push_back(build::alternating(5, 10000));
    out.push_back(build::dihedral(8, 10000));
    out.push_back(build::generalized_quaternion(8, 10000));
    out.push_back(build::extraspecial(3, 1, true, 10000));
    out.push_back(build::modular_p3(3, 10000));
    out.push_back(build::wreath_cyclic(3, 10000));
    out.push_back(build::extraspecial(3, 2, true, 10000));
    out.push_back(build::extraspecial(3, 2, false, 10000));
    out.push_back(build::extraspecial(5, 1, true, 10000));
    out.push_back(build::extraspecial(7, 1, true, 10000));
    out.push_back(build::direct_product(build::extraspecial(3, 1, true, 100),
                                        build::extraspecial(3, 1, true, 100), 10000));
    out.push_back(build::semidirect_cyclic(7, 3, 2, 10000));
    out.push_back(build::semidirect_cyclic(13, 3, 3, 10000));
    out.push_back(build::semidirect_cyclic(19, 3, 7, 10000));
    out.push_back(build::semidirect_cyclic(5, 4, 2, 10000));
    out.push_back(build::semidirect_cyclic(5, 2, 4, 10000));
    out.push_back(fixtures::order_189_witness());
    out.push_back(fixtures::order_75_witness());
    return out;
}

/// Shipped catalog (complete isomorphism-type lists for orders <= 32 and 81)
/// plus the named fixtures.
inline std::vector<GroupPtr> full_catalog(const std::string& dir = default_catalog_dir()) {
    std::vector<GroupPtr> out = load_file_catalog(dir);
    for (auto& g : named_fixtures()) out.push_back(std::move(g));
    return out;
}

} // namespace commdeg
