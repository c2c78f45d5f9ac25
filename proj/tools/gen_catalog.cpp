// Emits the group catalog: one cayley-v1 JSON file per isomorphism type for
// every order <= 32, plus the complete list of order 81. p-groups are
// generated as central extensions of C_p (cocycle enumeration over F_p with
// H^2 representatives, then isomorphism dedup); other orders come from the
// classified constructions. Per-order counts are asserted against the known
// number-of-groups sequence.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "commdeg/catalog.hpp"
#include "commdeg/group_build.hpp"
#include "commdeg/group_io.hpp"
#include "commdeg/isomorphism.hpp"

using namespace commdeg;

namespace {

using Row = std::vector<std::uint8_t>; // dense row over F_p

struct Echelon {
    long long p;
    std::size_t cols;
    std::vector<Row> rows;           // reduced rows
    std::vector<std::size_t> leads;  // lead column per row

    explicit Echelon(long long p_, std::size_t cols_) : p(p_), cols(cols_) {}

    // reduces r in place against the basis; returns true if nonzero remainder
    bool reduce(Row& r) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::uint8_t c = r[leads[i]];
            if (!c) continue;
            std::uint8_t factor = static_cast<std::uint8_t>((p - c) % p);
            const Row& pivot = rows[i];
            for (std::size_t j = leads[i]; j < cols; ++j)
                r[j] = static_cast<std::uint8_t>((r[j] + factor * pivot[j]) % p);
        }
        for (std::size_t j = 0; j < cols; ++j)
            if (r[j]) return true;
        return false;
    }

    bool insert(Row r) {
        if (!reduce(r)) return false;
        std::size_t lead = 0;
        while (!r[lead]) ++lead;
        // normalize lead to 1
        std::uint8_t inv = 1;
        while ((inv * r[lead]) % p != 1) ++inv;
        for (std::size_t j = lead; j < cols; ++j) r[j] = static_cast<std::uint8_t>((r[j] * inv) % p);
        rows.push_back(std::move(r));
        leads.push_back(lead);
        return true;
    }
};

/// All central extensions of C_p by H up to cohomology class (one table per
/// H^2 representative; isomorphic duplicates are expected and dropped later).
std::vector<GroupPtr> central_extensions(const GroupPtr& h, long long p) {
    std::size_t m = h->order();
    std::size_t vars = (m - 1) * (m - 1);
    auto var = [m](std::size_t a, std::size_t b) { return (a - 1) * (m - 1) + (b - 1); };

    // kernel of the cocycle conditions
    Echelon constraints(p, vars);
    Row row(vars, 0);
    for (std::size_t a = 1; a < m; ++a)
        for (std::size_t b = 1; b < m; ++b)
            for (std::size_t c = 1; c < m; ++c) {
                std::fill(row.begin(), row.end(), 0);
                auto bump = [&](std::size_t x, std::size_t y, int sign) {
                    if (x == 0 || y == 0) return;
                    std::size_t v = var(x, y);
                    row[v] = static_cast<std::uint8_t>(((row[v] + sign) % p + p) % p);
                };
                Elem ab = h->mul(static_cast<Elem>(a), static_cast<Elem>(b));
                Elem bc = h->mul(static_cast<Elem>(b), static_cast<Elem>(c));
                bump(a, b, 1);
                bump(ab, c, 1);
                bump(b, c, p - 1);
                bump(a, bc, p - 1);
                constraints.insert(row);
            }
    // nullspace basis of the constraint matrix
    std::vector<Row> kernel;
    {
        std::vector<bool> is_lead(vars, false);
        for (std::size_t l : constraints.leads) is_lead[l] = true;
        for (std::size_t freev = 0; freev < vars; ++freev) {
            if (is_lead[freev]) continue;
            Row v(vars, 0);
            v[freev] = 1;
            // back-substitute pivots
            for (std::size_t i = constraints.rows.size(); i-- > 0;) {
                std::size_t l = constraints.leads[i];
                std::uint8_t s = 0;
                for (std::size_t j = l + 1; j < vars; ++j)
                    s = static_cast<std::uint8_t>((s + constraints.rows[i][j] * v[j]) % p);
                v[l] = static_cast<std::uint8_t>((p - s) % p);
            }
            kernel.push_back(std::move(v));
        }
    }

    // coboundary span and a complement inside the kernel
    Echelon cobound(p, vars);
    for (std::size_t hh = 1; hh < m; ++hh) {
        Row v(vars, 0);
        for (std::size_t a = 1; a < m; ++a)
            for (std::size_t b = 1; b < m; ++b) {
                int val = 0;
                if (a == hh) ++val;
                if (b == hh) ++val;
                if (h->mul(static_cast<Elem>(a), static_cast<Elem>(b)) == static_cast<Elem>(hh)) --val;
                v[var(a, b)] = static_cast<std::uint8_t>(((val % static_cast<int>(p)) + p) % p);
            }
        cobound.insert(v);
    }
    std::vector<Row> complement;
    for (const Row& v : kernel) {
        Row copy = v;
        if (cobound.insert(std::move(copy))) complement.push_back(v);
    }
    if (complement.size() > 12)
        throw ValidationError("unexpectedly large H^2 dimension " + std::to_string(complement.size()));

    // every F_p combination of complement vectors gives one extension
    std::vector<GroupPtr> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < complement.size(); ++i) total *= static_cast<std::size_t>(p);
    std::size_t pp = static_cast<std::size_t>(p);
    std::size_t n = m * pp;
    for (std::size_t combo = 0; combo < total; ++combo) {
        Row f(vars, 0);
        std::size_t c = combo;
        for (const Row& gen : complement) {
            std::uint8_t coeff = static_cast<std::uint8_t>(c % pp);
            c /= pp;
            if (coeff)
                for (std::size_t j = 0; j < vars; ++j)
                    f[j] = static_cast<std::uint8_t>((f[j] + coeff * gen[j]) % p);
        }
        // element (h, t) has id h*p + t; product (h1,t1)(h2,t2) =
        // (h1 h2, t1 + t2 + f(h1,h2))
        std::vector<Elem> table(n * n);
        for (std::size_t h1 = 0; h1 < m; ++h1)
            for (std::size_t t1 = 0; t1 < pp; ++t1)
                for (std::size_t h2 = 0; h2 < m; ++h2)
                    for (std::size_t t2 = 0; t2 < pp; ++t2) {
                        std::size_t fv = (h1 && h2) ? f[var(h1, h2)] : 0;
                        std::size_t hh = h->mul(static_cast<Elem>(h1), static_cast<Elem>(h2));
                        table[(h1 * pp + t1) * n + (h2 * pp + t2)] =
                            static_cast<Elem>(hh * pp + (t1 + t2 + fv) % pp);
                    }
        out.push_back(make_group(n, std::move(table), "ext"));
    }
    return out;
}

using Signature = std::tuple<std::size_t, std::vector<unsigned>, std::vector<std::size_t>, std::size_t,
                             std::size_t, unsigned>;

Signature signature_of(const GroupPtr& g) {
    std::vector<unsigned> orders;
    for (std::size_t x = 0; x < g->order(); ++x) orders.push_back(g->element_order(static_cast<Elem>(x)));
    std::sort(orders.begin(), orders.end());
    std::vector<std::size_t> class_sizes;
    for (const auto& c : conjugacy_classes(*g).classes) class_sizes.push_back(c.size());
    return {g->order(), orders, class_sizes, center(g).order(), derived_subgroup(g).order(),
            g->exponent()};
}

/// Appends candidates to the per-order list, dropping isomorphic duplicates.
struct Collector {
    std::map<std::size_t, std::vector<std::pair<Signature, GroupPtr>>> by_order;

    void add(const GroupPtr& g) {
        auto& list = by_order[g->order()];
        Signature sig = signature_of(g);
        for (auto& [s, existing] : list) {
            if (s != sig) continue;
            if (isomorphic(existing, g, 50000000)) return;
        }
        list.emplace_back(std::move(sig), g);
    }

    std::vector<GroupPtr> of_order(std::size_t n) {
        std::vector<std::pair<Signature, GroupPtr>>& list = by_order[n];
        std::sort(list.begin(), list.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<GroupPtr> out;
        for (auto& [s, g] : list) out.push_back(g);
        return out;
    }
};

} // namespace

int main(int argc, char** argv) {
    std::string out_dir = argc > 1 ? argv[1] : "data/catalog";
    std::filesystem::create_directories(out_dir);

    // classical number-of-groups counts used as generation oracles
    const std::map<std::size_t, std::size_t> expected = {
        {1, 1},  {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},  {7, 1},  {8, 5},
        {9, 2},  {10, 2}, {11, 1}, {12, 5}, {13, 1}, {14, 2}, {15, 1}, {16, 14},
        {17, 1}, {18, 5}, {19, 1}, {20, 5}, {21, 2}, {22, 2}, {23, 1}, {24, 15},
        {25, 2}, {26, 2}, {27, 5}, {28, 4}, {29, 1}, {30, 4}, {31, 1}, {32, 51},
        {81, 15}};

    Collector collect;
    const std::size_t cap = 10000;

    for (std::size_t n = 1; n <= 32; ++n)
        for (auto& g : abelian_groups_of_order(static_cast<long long>(n), cap)) collect.add(g);
    for (auto& g : abelian_groups_of_order(81, cap)) collect.add(g);

    // nonabelian non-prime-power orders, from the classified constructions
    auto C = [&](long long n) { return build::cyclic(n, cap); };
    auto D = [&](long long order) { return build::dihedral(order, cap); };
    auto prod = [&](GroupPtr a, GroupPtr b) { return build::direct_product(a, b, cap); };
    for (long long n : {3, 5, 7, 9, 11, 13}) collect.add(D(2 * n)); // D6 D10 D14 D18 D22 D26
    collect.add(build::symmetric(4, cap));
    collect.add(build::alternating(4, cap));
    collect.add(D(12));
    collect.add(D(20));
    collect.add(D(24));
    collect.add(D(28));
    collect.add(D(30));
    collect.add(build::dicyclic(3, "Dic3", cap));
    collect.add(build::dicyclic(5, "Dic5", cap));
    collect.add(build::dicyclic(6, "Dic6", cap));
    collect.add(build::dicyclic(7, "Dic7", cap));
    collect.add(build::semidirect_cyclic(5, 4, 2, cap));   // F20
    collect.add(build::semidirect_cyclic(7, 3, 2, cap));   // C7:C3
    collect.add(build::semidirect_cyclic(3, 8, 2, cap));   // C3:C8
    collect.add(fixtures::sl_2_3());
    collect.add(fixtures::c3_semidirect_d8_klein_kernel());
    collect.add(fixtures::generalized_dihedral(prod(C(3), C(3)), "(C3xC3):C2"));
    collect.add(prod(C(3), build::symmetric(3, cap)));
    collect.add(prod(C(2), build::dicyclic(3, "Dic3", cap)));
    collect.add(prod(C(4), build::symmetric(3, cap)));
    collect.add(prod(C(3), D(8)));
    collect.add(prod(C(3), build::generalized_quaternion(8, cap)));
    collect.add(prod(C(2), build::alternating(4, cap)));
    collect.add(prod(prod(C(2), C(2)), build::symmetric(3, cap)));
    collect.add(prod(C(3), D(10)));
    collect.add(prod(C(5), build::symmetric(3, cap)));

    // p-groups by central extension towers
    auto extend_all = [&](std::size_t from, long long p) {
        std::vector<GroupPtr> bases = collect.of_order(from);
        std::size_t target = from * static_cast<std::size_t>(p);
        std::size_t made = 0;
        for (const GroupPtr& h : bases)
            for (auto& g : central_extensions(h, p)) {
                collect.add(g);
                ++made;
            }
        std::cerr << "order " << target << ": " << made << " candidates -> "
                  << collect.by_order[target].size() << " types\n";
    };
    extend_all(4, 2);   // -> 8
    extend_all(8, 2);   // -> 16
    extend_all(16, 2);  // -> 32
    extend_all(9, 3);   // -> 27
    extend_all(27, 3);  // -> 81

    // verify counts and write files
    bool ok = true;
    for (const auto& [order, count] : expected) {
        auto groups = collect.of_order(order);
        if (groups.size() != count) {
            std::cerr << "order " << order << ": expected " << count << " groups, generated "
                      << groups.size() << "\n";
            ok = false;
            continue;
        }
        for (std::size_t i = 0; i < groups.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "G%zu-%zu", order, i + 1);
            char fname[64];
            std::snprintf(fname, sizeof(fname), "%s/order%02zu_%02zu.json", out_dir.c_str(), order,
                          i + 1);
            GroupPtr named = make_group(groups[i]->order(), std::vector<Elem>(groups[i]->table()), name);
            save_group_file(*named, fname);
        }
        std::cout << "order " << order << ": " << count << " groups written\n";
    }
    if (!ok) {
        std::cerr << "generation incomplete\n";
        return 1;
    }
    std::cout << "catalog complete\n";
    return 0;
}
