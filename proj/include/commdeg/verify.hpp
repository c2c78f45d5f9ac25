#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "commdeg/bounds.hpp"
#include "commdeg/catalog.hpp"
#include "commdeg/characters.hpp"
#include "commdeg/isoclinism.hpp"
#include "commdeg/isomorphism.hpp"
#include "commdeg/probability.hpp"

namespace commdeg {

struct ScanEntry {
    std::string group;
    std::string statement;
    bool applicable = false;
    bool holds = true;
    std::string detail;
};

struct ScanReport {
    std::vector<ScanEntry> entries;

    void add(const std::string& group, const std::string& statement, bool applicable, bool holds,
             const std::string& detail = "") {
        entries.push_back(ScanEntry{group, statement, applicable, holds, detail});
    }
    void merge(const ScanReport& o) {
        entries.insert(entries.end(), o.entries.begin(), o.entries.end());
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& e : entries)
            if (e.applicable && !e.holds) ++n;
        return n;
    }
    std::size_t applicable_count() const {
        std::size_t n = 0;
        for (const auto& e : entries)
            if (e.applicable) ++n;
        return n;
    }
    bool ok() const { return failures() == 0; }

    Json to_json() const {
        Json arr = Json::array();
        for (const auto& e : entries) {
            Json j;
            j["group"] = e.group;
            j["statement"] = e.statement;
            j["applicable"] = e.applicable;
            j["holds"] = e.holds;
            if (!e.detail.empty()) j["detail"] = e.detail;
            arr.push_back(std::move(j));
        }
        Json out;
        out["entries"] = std::move(arr);
        out["applicable"] = applicable_count();
        out["failures"] = failures();
        return out;
    }
};

// ---------------------------------------------------------------------------
// Thm 2.3.3 classification table
// ---------------------------------------------------------------------------

struct TableRowSpec {
    std::string label;
    Rational expected_pr;
    GroupPtr witness;
    GroupPtr ref_derived;
    GroupPtr ref_derived_cap_center;
    GroupPtr ref_central_quotient;
    std::string note;
};

/// The classification rows with constructible witnesses. The 17/81 row lists
/// two possible derived-subgroup structures; the wreath witness realizes
/// C3 x C3 and the row records that choice.
inline std::vector<TableRowSpec> classification_rows() {
    auto C = [](long long n) { return build::cyclic(n, 10000); };
    auto prod = [](GroupPtr a, GroupPtr b) { return build::direct_product(a, b, 10000); };
    GroupPtr triv = C(1);
    std::vector<TableRowSpec> rows;
    rows.push_back({"1", Rational(1), C(7), triv, triv, triv, "odd abelian witness"});
    rows.push_back({"11/27", Rational(11, 27), build::extraspecial(3, 1, true, 10000), C(3), C(3),
                    prod(C(3), C(3)), "(1/3)(1+2/9), s=1"});
    rows.push_back({"29/125", Rational(29, 125), build::extraspecial(5, 1, true, 10000), C(5), C(5),
                    prod(C(5), C(5)), "(1/5)(1+4/25), s=1"});
    rows.push_back({"5/21", Rational(5, 21), build::semidirect_cyclic(7, 3, 2, 10000), C(7), triv,
                    build::semidirect_cyclic(7, 3, 2, 10000), ""});
    rows.push_back({"55/343", Rational(55, 343), build::extraspecial(7, 1, true, 10000), C(7), C(7),
                    prod(C(7), C(7)), ""});
    rows.push_back({"17/81", Rational(17, 81), build::wreath_cyclic(3, 10000), prod(C(3), C(3)),
                    C(3), build::extraspecial(3, 1, true, 10000),
                    "derived realizes the C3 x C3 alternative"});
    rows.push_back({"121/729", Rational(121, 729),
                    prod(build::extraspecial(3, 1, true, 10000), build::extraspecial(3, 1, true, 10000)),
                    prod(C(3), C(3)), prod(C(3), C(3)),
                    prod(prod(C(3), C(3)), prod(C(3), C(3))),
                    "witness ES+27 x ES+27; Pr multiplies to 121/729"});
    rows.push_back({"7/39", Rational(7, 39), build::semidirect_cyclic(13, 3, 3, 10000), C(13), triv,
                    build::semidirect_cyclic(13, 3, 3, 10000), ""});
    rows.push_back({"3/19", Rational(3, 19), build::semidirect_cyclic(19, 3, 7, 10000), C(19), triv,
                    build::semidirect_cyclic(19, 3, 7, 10000), ""});
    rows.push_back({"29/189", Rational(29, 189), fixtures::order_189_witness(), C(21), C(3),
                    prod(C(3), build::semidirect_cyclic(7, 3, 2, 10000)), ""});
    rows.push_back({"11/75", Rational(11, 75), fixtures::order_75_witness(), prod(C(5), C(5)), triv,
                    fixtures::order_75_witness(), "Z is trivial"});
    return rows;
}

inline ScanReport verify_classification_table() {
    ScanReport report;
    for (const TableRowSpec& row : classification_rows()) {
        const GroupPtr& g = row.witness;
        std::string name = g->name();
        if (static_cast<long long>(g->order()) % 2 == 0) {
            report.add(name, "Table-2.3.3[" + row.label + "]-odd-order", true, false, "witness has even order");
            continue;
        }
        Rational measured = pr(g);
        report.add(name, "Table-2.3.3[" + row.label + "]-pr", true, measured == row.expected_pr,
                   measured.str() + " vs " + row.expected_pr.str());

        Subgroup der = derived_subgroup(g);
        Subgroup zen = center(g);
        std::vector<Elem> inter;
        for (Elem e : der.elements())
            if (zen.contains(e)) inter.push_back(e);

        GroupPtr der_grp = subgroup_as_group(der, "G'");
        GroupPtr cap_grp = subgroup_as_group(Subgroup(g, inter), "G' cap Z");
        GroupPtr quo_grp = quotient(g, zen).group;
        report.add(name, "Table-2.3.3[" + row.label + "]-derived", true,
                   isomorphic(der_grp, row.ref_derived),
                   "|G'| = " + std::to_string(der_grp->order()));
        report.add(name, "Table-2.3.3[" + row.label + "]-derived-cap-center", true,
                   isomorphic(cap_grp, row.ref_derived_cap_center),
                   "|G' cap Z| = " + std::to_string(cap_grp->order()));
        report.add(name, "Table-2.3.3[" + row.label + "]-central-quotient", true,
                   isomorphic(quo_grp, row.ref_central_quotient),
                   "|G/Z| = " + std::to_string(quo_grp->order()));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Thm 2.4.3 and Prop 2.4.7 equivalences
// ---------------------------------------------------------------------------

struct SixWayReport {
    bool applicable = false;
    bool s[6] = {false, false, false, false, false, false};
    bool all_equal = false;
    bool consequences_hold = true;
};

/// Evaluates the six equivalent statements of Thm 2.4.3 independently.
inline SixWayReport thm_2_4_3_statements(const GroupPtr& g) {
    SixWayReport out;
    if (is_abelian(*g)) return out;
    out.applicable = true;
    Subgroup der = derived_subgroup(g);
    Subgroup zen = center(g);
    auto cc = conjugacy_classes(*g);
    Subgroup whole = Subgroup::whole(g);
    BigInt dsize(der.order());

    out.s[0] = pr(g) == thm_2_4_1_bound(g);

    {
        CentralTypeReport ct = central_type_report(g);
        out.s[1] = ct.cd.degrees.size() == 2 && ct.is_central_type;
    }

    bool s3 = true, s4 = true, s5 = true, s6 = true;
    bool nontrivial_seen = false;
    for (std::size_t ci = 0; ci < cc.k(); ++ci) {
        Elem x = cc.representative(ci);
        if (zen.contains(x)) continue;
        nontrivial_seen = true;
        const auto& cl = cc.classes[ci];
        if (BigInt(cl.size()) != dsize) s3 = false;
        {
            // Cl(x) == G' x as sets
            std::vector<Elem> gx;
            gx.reserve(der.order());
            for (Elem d : der.elements()) gx.push_back(g->mul(d, x));
            std::sort(gx.begin(), gx.end());
            if (gx != cl) s4 = false;
        }
        {
            Subgroup cx = centralizer(whole, x);
            if (!is_normal(*g, cx)) {
                s5 = false;
            } else {
                GroupPtr quo = quotient(g, cx).group;
                GroupPtr der_grp = subgroup_as_group(der, "G'");
                if (!isomorphic(der_grp, quo)) s5 = false;
            }
        }
        {
            std::vector<bool> hit(g->order(), false);
            std::size_t count = 0;
            for (std::size_t y = 0; y < g->order(); ++y) {
                Elem c = g->commutator(static_cast<Elem>(y), x);
                if (!hit[c]) {
                    hit[c] = true;
                    ++count;
                }
            }
            bool equal = count == der.order();
            if (equal)
                for (Elem d : der.elements())
                    if (!hit[d]) equal = false;
            if (!equal) s6 = false;
        }
    }
    if (!nontrivial_seen) throw NumericalFailure("nonabelian group with G = Z");
    out.s[2] = s3;
    out.s[3] = s4;
    out.s[4] = s5;
    out.s[5] = s6;
    out.all_equal = true;
    for (int i = 1; i < 6; ++i)
        if (out.s[i] != out.s[0]) out.all_equal = false;

    // stated consequences
    if (out.s[3]) {
        StructurePredicates sp = structure_predicates(g);
        if (!(sp.is_nilpotent && sp.nilpotency_class == 2)) out.consequences_hold = false;
    }
    if (out.s[4]) {
        StructurePredicates sp = structure_predicates(g);
        if (!sp.is_cn_group) out.consequences_hold = false;
    }
    if (out.s[5]) {
        // every element of G' is a commutator
        std::vector<bool> hit(g->order(), false);
        for (std::size_t x = 0; x < g->order(); ++x)
            for (std::size_t y = 0; y < g->order(); ++y)
                hit[g->commutator(static_cast<Elem>(x), static_cast<Elem>(y))] = true;
        for (Elem d : der.elements())
            if (!hit[d]) out.consequences_hold = false;
    }
    return out;
}

struct FourWayReport {
    long long p = 0;
    bool s[4] = {false, false, false, false};
    bool all_equal = false;
    std::optional<bool> pr_condition; // Pr > 1/p, when p is the smallest prime divisor
    bool fifth_matches = true;
};

/// Prop 2.4.7 statements for a fixed prime p, evaluated independently.
inline FourWayReport prop_2_4_7_statements(const GroupPtr& g, long long p) {
    FourWayReport out;
    out.p = p;
    Subgroup der = derived_subgroup(g);
    Subgroup zen = center(g);

    {
        bool inside = true;
        for (Elem e : der.elements())
            if (!zen.contains(e)) inside = false;
        out.s[0] = static_cast<long long>(der.order()) == p && inside;
    }
    if (g->order() <= 2000) {
        CentralTypeReport ct = central_type_report(g);
        out.s[1] = ct.is_central_type && ct.cd.degrees.size() == 2 &&
                   static_cast<long long>(der.order()) == p;
    }
    {
        // G = P x A with P a p-group, |P'| = p, A abelian of order coprime to p
        std::vector<Elem> p_part, coprime_part;
        for (std::size_t x = 0; x < g->order(); ++x) {
            long long o = g->element_order(static_cast<Elem>(x));
            bool ppower = true;
            while (o % p == 0) o /= p;
            ppower = (o == 1);
            if (ppower) p_part.push_back(static_cast<Elem>(x));
            long long o2 = g->element_order(static_cast<Elem>(x));
            if (o2 % p != 0) coprime_part.push_back(static_cast<Elem>(x));
        }
        bool ok = true;
        if (p_part.size() * coprime_part.size() != g->order()) ok = false;
        auto closed = [&](const std::vector<Elem>& set) {
            std::vector<bool> in(g->order(), false);
            for (Elem e : set) in[e] = true;
            for (Elem a : set)
                for (Elem b : set)
                    if (!in[g->mul(a, b)]) return false;
            return true;
        };
        if (ok) ok = closed(p_part) && closed(coprime_part);
        if (ok) {
            for (Elem a : p_part)
                for (Elem b : coprime_part)
                    if (g->mul(a, b) != g->mul(b, a)) ok = false;
        }
        if (ok) {
            Subgroup pg(g, p_part);
            Subgroup ag(g, coprime_part);
            GroupPtr a_grp = subgroup_as_group(ag, "A");
            if (!is_abelian(*a_grp)) ok = false;
            if (ok) {
                GroupPtr p_grp = subgroup_as_group(pg, "P");
                if (derived_subgroup(p_grp).order() != static_cast<std::size_t>(p)) ok = false;
            }
        }
        out.s[2] = ok;
    }
    {
        // isoclinic to an extraspecial p-group; |G'| = p and |G:Z| = p^{2k}
        // are isoclinism invariants, so they gate the search
        bool possible = static_cast<long long>(der.order()) == p;
        long long k = 0;
        if (possible) {
            std::size_t idx = g->order() / zen.order();
            while (idx > 1 && idx % static_cast<std::size_t>(p * p) == 0) {
                idx /= static_cast<std::size_t>(p * p);
                ++k;
            }
            if (idx != 1 || k == 0) possible = false;
        }
        if (possible) {
            GroupPtr target = build::extraspecial(p, k, true, 10000);
            out.s[3] = find_isoclinism(g, target).has_value();
        } else {
            out.s[3] = false;
        }
    }
    out.all_equal = out.s[1] == out.s[0] && out.s[2] == out.s[0] && out.s[3] == out.s[0];
    if (!is_abelian(*g) && g->order() > 1 &&
        p == smallest_prime_divisor(static_cast<long long>(g->order()))) {
        out.pr_condition = pr(g) > Rational(1, p);
        out.fifth_matches = (*out.pr_condition == out.s[0]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Commutator surjectivity (Prop 5.3.3, Cor 4.3.2)
// ---------------------------------------------------------------------------

struct SurjectivityReport {
    bool prop_5_3_3_applicable = false;
    bool prop_5_3_3_holds = true;
    bool cor_4_3_2_applicable = false;
    bool cor_4_3_2_holds = true;
};

inline SurjectivityReport commutator_surjectivity_check(const GroupPtr& g, const PrOptions& opts = {}) {
    SurjectivityReport out;
    Subgroup der = derived_subgroup(g);
    std::vector<bool> hit(g->order(), false);
    for (std::size_t x = 0; x < g->order(); ++x)
        for (std::size_t y = 0; y < g->order(); ++y)
            hit[g->commutator(static_cast<Elem>(x), static_cast<Elem>(y))] = true;

    long long p = g->order() > 1 ? smallest_prime_divisor(static_cast<long long>(g->order())) : 2;
    if (static_cast<long long>(der.order()) <= p * p) {
        out.prop_5_3_3_applicable = true;
        for (Elem d : der.elements())
            if (!hit[d]) out.prop_5_3_3_holds = false;
    }
    if (!is_abelian(*g) && g->order() <= 2000) {
        CentralTypeReport ct = central_type_report(g);
        if (ct.cd.degrees.size() == 2) {
            out.cor_4_3_2_applicable = true;
            for (unsigned n : {2u, 3u}) {
                auto fiber = generalized_commutator_fiber(g, n, opts);
                for (Elem d : der.elements())
                    if (fiber[d] == 0) out.cor_4_3_2_holds = false;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chapter 2 catalog scan
// ---------------------------------------------------------------------------

inline ScanReport chapter2_scan_group(const GroupPtr& g, const PrOptions& opts = {}) {
    ScanReport report;
    const std::string name = g->name();
    bool abelian = is_abelian(*g);
    Rational prg = pr(g);
    Subgroup der = derived_subgroup(g);
    Subgroup zen = center(g);
    long long p = g->order() > 1 ? smallest_prime_divisor(static_cast<long long>(g->order())) : 0;

    // 5/8 bound with its equality case
    {
        bool eq_cond = g->order() / zen.order() == 4;
        bool holds = abelian || (prg <= Rational(5, 8) && (prg == Rational(5, 8)) == eq_cond);
        report.add(name, "Intro-5/8", !abelian, holds, prg.str());
    }
    // Prop 2.4.4
    if (p > 2) report.add(name, "Prop-2.4.4-1", true, prg != Rational(1, p), prg.str());
    if (!abelian && p > 0) {
        bool rhs = true;
        if (static_cast<long long>(der.order()) != p) rhs = false;
        for (Elem e : der.elements())
            if (!zen.contains(e)) rhs = false;
        report.add(name, "Prop-2.4.4-2", true, (prg > Rational(1, p)) == rhs, prg.str());
    }
    // Cor 2.4.5
    report.add(name, "Cor-2.4.5", prg == Rational(1, 3), prg != Rational(1, 3) || g->order() % 2 == 0);
    // Thm 2.4.3 equivalence
    if (!abelian && g->order() <= 2000) {
        SixWayReport six = thm_2_4_3_statements(g);
        std::ostringstream detail;
        for (bool b : six.s) detail << (b ? '1' : '0');
        report.add(name, "Thm-2.4.3-equivalence", six.applicable, six.all_equal, detail.str());
        report.add(name, "Thm-2.4.3-consequences", six.applicable, six.consequences_hold);
    }
    // Prop 2.4.7 for each prime divisor
    if (g->order() > 1 && g->order() <= 2000) {
        long long m = static_cast<long long>(g->order());
        for (long long q = 2; q <= m; ++q) {
            if (!is_prime(q) || m % q != 0) continue;
            FourWayReport four = prop_2_4_7_statements(g, q);
            std::ostringstream detail;
            detail << "p=" << q << " ";
            for (bool b : four.s) detail << (b ? '1' : '0');
            report.add(name, "Prop-2.4.7-equivalence", true, four.all_equal, detail.str());
            if (four.pr_condition)
                report.add(name, "Prop-2.4.7-pr", true, four.fifth_matches, detail.str());
        }
    }
    // Thm 2.2.6
    {
        Theorem226Report t = theorem_2_2_6_check(g);
        report.add(name, "Thm-2.2.6", t.applicable, !t.applicable || t.passed,
                   t.applicable ? (t.centralizer_abelian ? "abelian branch" : "nonabelian branch") : "");
    }
    // Barry-MacHale
    {
        bool odd = g->order() % 2 == 1;
        bool premise1 = odd && prg > Rational(11, 75);
        bool premise2 = prg > Rational(1, 3);
        std::optional<StructurePredicates> sp;
        if (premise1 || premise2) sp = structure_predicates(g);
        report.add(name, "BarryMacHale-odd", premise1, !premise1 || sp->is_supersolvable, prg.str());
        report.add(name, "BarryMacHale-1/3", premise2, !premise2 || sp->is_supersolvable, prg.str());
    }
    // Guralnick-Robinson
    {
        bool premise = prg > Rational(3, 40);
        bool holds = true;
        if (premise) {
            StructurePredicates sp = structure_predicates(g);
            if (!sp.is_solvable) {
                GroupPtr a5 = build::alternating(5, 10000);
                GroupPtr zg = subgroup_as_group(zen, "Z");
                GroupPtr target = build::direct_product(a5, zg, 10000);
                holds = isomorphic(g, target);
            }
        }
        report.add(name, "GuralnickRobinson", premise, holds, prg.str());
    }
    // Prop 5.3.3 / Cor 4.3.2
    {
        SurjectivityReport s = commutator_surjectivity_check(g, opts);
        report.add(name, "Prop-5.3.3", s.prop_5_3_3_applicable,
                   !s.prop_5_3_3_applicable || s.prop_5_3_3_holds);
        report.add(name, "Cor-4.3.2", s.cor_4_3_2_applicable,
                   !s.cor_4_3_2_applicable || s.cor_4_3_2_holds);
    }
    return report;
}

inline ScanReport chapter2_scan(const std::vector<GroupPtr>& catalog, const PrOptions& opts = {}) {
    ScanReport report;
    for (const GroupPtr& g : catalog) report.merge(chapter2_scan_group(g, opts));
    return report;
}

// ---------------------------------------------------------------------------
// Prop 4.3.7 equality classification across a catalog
// ---------------------------------------------------------------------------

/// Pr^n_g = (p^n + p - 1)/p^{n+1} iff g = 1 and G is isoclinic to the
/// modular group of order p^3; both directions on every catalog group.
inline ScanReport prop_4_3_7_scan(const std::vector<GroupPtr>& catalog, unsigned n,
                                  const PrOptions& opts = {}) {
    ScanReport report;
    for (const GroupPtr& g : catalog) {
        if (is_abelian(*g) || g->order() > 2000) continue;
        long long p = smallest_prime_divisor(static_cast<long long>(g->order()));
        Rational target = prop_4_3_7_value(p, n);
        Subgroup der = derived_subgroup(g);
        bool isoclinic_to_modular = false;
        // invariant gate first: |G'| = p, |G/Z| = p^2
        if (static_cast<long long>(der.order()) == p &&
            g->order() / center(g).order() == static_cast<std::size_t>(p * p))
            isoclinic_to_modular = find_isoclinism(g, build::modular_p3(p, 10000)).has_value();
        auto fiber = generalized_commutator_fiber(g, n, opts);
        BigInt gn = big_pow(BigInt(g->order()), n);
        bool ok = true;
        std::string why;
        for (Elem e : der.elements()) {
            bool equal = Rational(fiber[e], gn) == target;
            bool cond = (e == 0) && isoclinic_to_modular;
            if (equal != cond) {
                ok = false;
                why = "element " + std::to_string(e);
                break;
            }
        }
        report.add(g->name(), "Prop-4.3.7-n" + std::to_string(n), true, ok, why);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Pr-value witness search (Props 2.5.1 / 2.5.2)
// ---------------------------------------------------------------------------

struct PrWitness {
    GroupPtr group;
    Rational value;
};

/// Searches the catalog plus the constructor families for groups with the
/// exact Pr value. Finding nothing is reported, not fatal.
inline std::vector<PrWitness> search_pr(const std::vector<GroupPtr>& catalog, const Rational& target,
                                        std::size_t max_witnesses = 3) {
    std::vector<PrWitness> out;
    auto consider = [&](const GroupPtr& g) {
        if (out.size() >= max_witnesses) return;
        Rational v(BigInt(conjugacy_classes(*g).k()), BigInt(g->order()));
        if (v == target) out.push_back(PrWitness{g, v});
    };
    for (const GroupPtr& g : catalog) consider(g);
    for (long long n = 1; n <= 64 && out.size() < max_witnesses; ++n)
        consider(build::dihedral(2 * n, 10000));
    for (long long p : {3, 5, 7, 11, 13})
        if (out.size() < max_witnesses) consider(fixtures::frobenius_full(p));
    for (long long p : {2, 3, 5})
        for (long long s : {1, 2})
            if (out.size() < max_witnesses) {
                unsigned long long order = 1;
                for (long long i = 0; i < 2 * s + 1; ++i) order *= static_cast<unsigned long long>(p);
                if (order <= 10000) consider(build::extraspecial(p, s, true, 10000));
            }
    // small products of family members
    if (out.size() < max_witnesses) {
        std::vector<GroupPtr> pool;
        for (long long n = 1; n <= 8; ++n) pool.push_back(build::dihedral(2 * n, 10000));
        for (long long p : {3, 5, 7}) pool.push_back(fixtures::frobenius_full(p));
        pool.push_back(build::extraspecial(2, 1, true, 100));
        pool.push_back(build::extraspecial(3, 1, true, 100));
        for (std::size_t i = 0; i < pool.size() && out.size() < max_witnesses; ++i)
            for (std::size_t j = i; j < pool.size() && out.size() < max_witnesses; ++j) {
                if (pool[i]->order() * pool[j]->order() > 10000) continue;
                Rational vi(BigInt(conjugacy_classes(*pool[i]).k()), BigInt(pool[i]->order()));
                Rational vj(BigInt(conjugacy_classes(*pool[j]).k()), BigInt(pool[j]->order()));
                if (vi * vj == target)
                    consider(build::direct_product(pool[i], pool[j], 10000));
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Randomized bounds scan over a catalog
// ---------------------------------------------------------------------------

/// Runs bounds_suite over the catalog with deterministic pseudo-random
/// (H, K, g, n, d) parameters until at least `instances` parameterized
/// evaluations have been made; every applicable entry must hold.
inline ScanReport bounds_catalog_scan(const std::vector<GroupPtr>& catalog, std::size_t instances,
                                      std::uint64_t seed = 20100701, const PrOptions& opts = {}) {
    ScanReport report;
    std::mt19937_64 rng(seed);
    std::size_t done = 0;
    auto random_subgroup = [&](const GroupPtr& g) {
        std::uniform_int_distribution<std::size_t> pick(0, g->order() - 1);
        std::uniform_int_distribution<int> howmany(1, 2);
        std::vector<Elem> gens;
        for (int i = 0, n = howmany(rng); i < n; ++i) gens.push_back(static_cast<Elem>(pick(rng)));
        return generated_subgroup(g, gens);
    };
    for (std::size_t round = 0; done < instances; ++round) {
        for (const GroupPtr& g : catalog) {
            if (done >= instances) break;
            BoundsParams params;
            params.opts = opts;
            Subgroup der = derived_subgroup(g);
            std::uniform_int_distribution<std::size_t> pick_der(0, der.order() - 1);
            params.g = der.elements()[pick_der(rng)];
            params.H = random_subgroup(g);
            params.K = random_subgroup(g);
            // supersets for the monotonicity statements
            {
                std::uniform_int_distribution<std::size_t> pick(0, g->order() - 1);
                std::vector<Elem> gens2(params.K->elements());
                gens2.push_back(static_cast<Elem>(pick(rng)));
                params.K2 = generated_subgroup(g, gens2);
                std::vector<Elem> gens3(params.H->elements());
                gens3.push_back(static_cast<Elem>(pick(rng)));
                params.H2 = generated_subgroup(g, gens3);
            }
            std::uniform_int_distribution<unsigned> pick_n(2, 3);
            params.n = pick_n(rng);
            std::uniform_int_distribution<unsigned> pick_d(2, 6);
            params.d = pick_d(rng); // clamped to m_G inside
            params.word = random_admissible_word(rng, 3);
            params.word_n = std::max(params.word->word().arity(), pick_n(rng));
            BoundsReport bounds = bounds_suite(g, params);
            for (const BoundEntry& e : bounds.entries)
                report.add(g->name(), e.statement, e.applicable, e.holds,
                           e.applicable && !e.holds
                               ? e.lhs.str() + " " + e.relation + " " + e.rhs.str() + " " + e.detail
                               : "");
            ++done;
        }
    }
    return report;
}

struct LimitSequenceReport {
    long long k = 0;
    std::vector<std::pair<std::string, Rational>> prefix; // (group name, Pr)
    Rational limit;
    std::vector<Rational> gaps;
    bool gaps_strictly_decreasing = false;
};

/// Desk-scale prefix of a family with Pr -> 1/k: products of extraspecial
/// towers, one prime factor of k at a time.
inline LimitSequenceReport pr_limit_sequence(long long k, std::size_t order_cap = 10000) {
    if (k < 2) throw InvalidSpec("limit target requires k >= 2");
    LimitSequenceReport out;
    out.k = k;
    out.limit = Rational(1, k);
    std::vector<long long> primes;
    long long m = k;
    for (long long p = 2; p * p <= m; ++p)
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    if (m > 1) primes.push_back(m);
    for (long long s = 1;; ++s) {
        unsigned long long order = 1;
        bool fits = true;
        for (long long p : primes) {
            for (long long i = 0; i < 2 * s + 1 && fits; ++i) {
                order *= static_cast<unsigned long long>(p);
                // the central-product construction passes through a direct
                // product one p-factor larger
                if (order * static_cast<unsigned long long>(p) > order_cap) fits = false;
            }
        }
        if (!fits) break;
        GroupPtr g;
        for (long long p : primes) {
            GroupPtr factor = build::extraspecial(p, s, true, order_cap);
            g = g ? build::direct_product(g, factor, order_cap) : factor;
        }
        Rational v(BigInt(conjugacy_classes(*g).k()), BigInt(g->order()));
        out.prefix.emplace_back(g->name(), v);
        out.gaps.push_back((v - out.limit).abs());
    }
    out.gaps_strictly_decreasing = out.gaps.size() >= 2;
    for (std::size_t i = 0; i + 1 < out.gaps.size(); ++i)
        if (!(out.gaps[i + 1] < out.gaps[i])) out.gaps_strictly_decreasing = false;
    return out;
}

} // namespace commdeg
