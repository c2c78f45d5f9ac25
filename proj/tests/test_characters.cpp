#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "commdeg/characters.hpp"
#include "commdeg/group_build.hpp"
#include "commdeg/catalog.hpp"
#include "commdeg/words.hpp"

using namespace commdeg;

namespace {

// independent brute-force oracles
BigInt oracle_commutator_count(const GroupPtr& g, Elem target) {
    BigInt c = 0;
    for (std::size_t x = 0; x < g->order(); ++x)
        for (std::size_t y = 0; y < g->order(); ++y)
            if (g->commutator(static_cast<Elem>(x), static_cast<Elem>(y)) == target) ++c;
    return c;
}

BigInt oracle_zeta_tilde(const GroupPtr& g, const Subgroup& h, Elem target) {
    BigInt c = 0;
    for (Elem x : h.elements())
        for (std::size_t y = 0; y < g->order(); ++y)
            if (g->commutator(x, static_cast<Elem>(y)) == target) ++c;
    return c;
}

BigInt oracle_zeta_tilde_2n_2(const GroupPtr& g, const Subgroup& h, Elem target) {
    BigInt c = 0;
    for (Elem h1 : h.elements())
        for (std::size_t g1 = 0; g1 < g->order(); ++g1) {
            Elem a = g->commutator(h1, static_cast<Elem>(g1));
            for (Elem h2 : h.elements())
                for (std::size_t g2 = 0; g2 < g->order(); ++g2)
                    if (g->mul(a, g->commutator(h2, static_cast<Elem>(g2))) == target) ++c;
        }
    return c;
}

BigInt oracle_zeta_tilde_3(const GroupPtr& g, const Subgroup& h, Elem target) {
    BigInt c = 0;
    for (std::size_t g1 = 0; g1 < g->order(); ++g1)
        for (Elem h2 : h.elements())
            for (std::size_t g3 = 0; g3 < g->order(); ++g3) {
                Elem v = g->mul(g->conj(static_cast<Elem>(g1), h2),
                                g->conj(static_cast<Elem>(g3), g->inv(h2)));
                if (v == target) ++c;
            }
    return c;
}

} // namespace

TEST_CASE("character table of cyclic groups") {
    auto t = character_table(build_group(GroupSpec::cyclic(5)));
    REQUIRE(t.k() == 5);
    for (unsigned d : t.degrees) CHECK(d == 1);
    // values are 5th roots of unity
    for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t c = 0; c < 5; ++c)
            CHECK(std::abs(std::abs(t.value(r, c)) - 1.0) < 1e-9);
}

TEST_CASE("character degrees of standard groups") {
    auto degrees = [](const GroupPtr& g) { return character_table(g).degrees; };
    CHECK(degrees(build_group(GroupSpec::symmetric(3))) == std::vector<unsigned>{1, 1, 2});
    CHECK(degrees(build_group(GroupSpec::dihedral(8))) == std::vector<unsigned>{1, 1, 1, 1, 2});
    CHECK(degrees(build_group(GroupSpec::generalized_quaternion(8))) ==
          std::vector<unsigned>{1, 1, 1, 1, 2});
    CHECK(degrees(build_group(GroupSpec::alternating(4))) == std::vector<unsigned>{1, 1, 1, 3});
    CHECK(degrees(build_group(GroupSpec::alternating(5))) == std::vector<unsigned>{1, 3, 3, 4, 5});
    CHECK(degrees(build_group(GroupSpec::symmetric(4))) == std::vector<unsigned>{1, 1, 2, 3, 3});
    CHECK(degrees(build_group(GroupSpec::extraspecial(3, 1, true))) ==
          std::vector<unsigned>{1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3});
}

TEST_CASE("first row is trivial and the order is deterministic") {
    for (auto g : {build_group(GroupSpec::symmetric(4)), build_group(GroupSpec::dihedral(12)),
                   build_group(GroupSpec::cyclic(6))}) {
        auto t1 = character_table(g);
        for (std::size_t c = 0; c < t1.k(); ++c) CHECK(t1.value(0, c) == Complex(1, 0));
        auto t2 = character_table(g);
        for (std::size_t r = 0; r < t1.k(); ++r)
            for (std::size_t c = 0; c < t1.k(); ++c) CHECK(t1.value(r, c) == t2.value(r, c));
    }
}

TEST_CASE("column orthogonality") {
    for (auto g : {build_group(GroupSpec::symmetric(3)), build_group(GroupSpec::dihedral(8)),
                   build_group(GroupSpec::alternating(5)), build_group(GroupSpec::modular_p3(3))}) {
        auto t = character_table(g);
        Subgroup whole = Subgroup::whole(g);
        for (std::size_t a = 0; a < t.k(); ++a)
            for (std::size_t b = 0; b < t.k(); ++b) {
                Complex s = 0;
                for (std::size_t r = 0; r < t.k(); ++r) s += t.value(r, a) * std::conj(t.value(r, b));
                double expect =
                    a == b ? static_cast<double>(centralizer(whole, t.classes->representative(a)).order())
                           : 0.0;
                CHECK(std::abs(s - Complex(expect, 0)) < 1e-8);
            }
    }
}

TEST_CASE("inner products") {
    auto g = build_group(GroupSpec::symmetric(3));
    auto t = character_table(g);
    Subgroup whole = Subgroup::whole(g);
    for (std::size_t i = 0; i < t.k(); ++i)
        CHECK(inner_product_rational(t.rows[i], t.rows[i], whole) == Rational(1));

    Subgroup a3 = derived_subgroup(g);
    // the degree-2 character restricted to A3 has values 2, -1, -1
    CHECK(inner_product_rational(t.rows[2], t.rows[2], a3) == Rational(2));
    CHECK(inner_product_rational(t.rows[0], t.rows[0], a3) == Rational(1));
}

TEST_CASE("induction") {
    auto g = build_group(GroupSpec::symmetric(3));
    auto t = character_table(g);

    // trivial character of the trivial subgroup induces the regular character
    Subgroup triv = Subgroup::trivial(g);
    ClassFunction reg = induce(triv, {Complex(1, 0)}, t.classes);
    CHECK(reg.values[0] == Complex(6, 0));
    for (std::size_t c = 1; c < t.k(); ++c) CHECK(reg.values[c] == Complex(0, 0));
    auto dec = decompose(t, reg);
    CHECK(dec.is_character);
    for (std::size_t i = 0; i < t.k(); ++i) CHECK(dec.multiplicities[i] == BigInt(t.degrees[i]));

    // a nontrivial linear character of A3 induces the degree-2 irreducible
    Subgroup a3 = derived_subgroup(g);
    GroupPtr a3_grp = subgroup_as_group(a3, "A3");
    auto ta3 = character_table(a3_grp);
    std::vector<Complex> vals;
    for (std::size_t i = 0; i < a3.order(); ++i) {
        // map subgroup element position to the standalone group's element id:
        // subgroup_as_group preserves sorted positions
        vals.push_back(ta3.rows[1].at_element(static_cast<Elem>(i)));
    }
    ClassFunction ind = induce(a3, vals, t.classes);
    for (std::size_t c = 0; c < t.k(); ++c) CHECK(std::abs(ind.values[c] - t.value(2, c)) < 1e-8);

    // degree formula |G : H| chi(1)
    CHECK(std::abs(ind.values[0].real() - 2.0) < 1e-9);

    // Frobenius reciprocity on this instance: [ind, chi]_G = [chi_H, lin]_H
    for (std::size_t i = 0; i < t.k(); ++i) {
        Complex lhs = 0;
        for (std::size_t c = 0; c < t.k(); ++c)
            lhs += static_cast<double>(t.classes->classes[c].size()) * ind.values[c] *
                   std::conj(t.value(i, c));
        lhs /= 6.0;
        auto restricted = restrict_to(t.rows[i], a3);
        Complex rhs = 0;
        for (std::size_t j = 0; j < a3.order(); ++j) rhs += restricted[j] * std::conj(vals[j]);
        rhs /= 3.0;
        CHECK(std::abs(lhs - rhs) < 1e-8);
    }
}

TEST_CASE("frobenius zeta matches the counting oracle") {
    for (auto g : {build_group(GroupSpec::symmetric(3)), build_group(GroupSpec::dihedral(8)),
                   build_group(GroupSpec::generalized_quaternion(8)),
                   build_group(GroupSpec::alternating(4)), build_group(GroupSpec::cyclic(6)),
                   build_group(GroupSpec::modular_p3(3))}) {
        for (std::size_t e = 0; e < g->order(); ++e)
            CHECK(frobenius_zeta(g, static_cast<Elem>(e)) ==
                  oracle_commutator_count(g, static_cast<Elem>(e)));
    }
    // frozen values
    auto s3 = build_group(GroupSpec::symmetric(3));
    CHECK(frobenius_zeta(s3, 0) == 18);
    auto d8 = build_group(GroupSpec::dihedral(8));
    CHECK(frobenius_zeta(d8, 0) == 40);
    CHECK(frobenius_zeta(build_group(GroupSpec::cyclic(9)), 0) == 81);
}

TEST_CASE("zeta tilde") {
    auto g = build_group(GroupSpec::symmetric(3));
    Subgroup a3 = derived_subgroup(g);
    // frozen oracle values: [12, 0, 0, 3, 3, 0] by element id
    CHECK(zeta_tilde(g, a3, 0, true) == 12);
    BigInt total = 0;
    for (std::size_t e = 0; e < 6; ++e) {
        BigInt v = zeta_tilde(g, a3, static_cast<Elem>(e), true);
        CHECK(v == oracle_zeta_tilde(g, a3, static_cast<Elem>(e)));
        total += v;
    }
    CHECK(total == BigInt(3) * 6); // sum_g = |H||G|

    // H = G specializes to frobenius zeta
    Subgroup whole = Subgroup::whole(g);
    for (std::size_t e = 0; e < 6; ++e)
        CHECK(zeta_tilde(g, whole, static_cast<Elem>(e)) == frobenius_zeta(g, static_cast<Elem>(e)));

    // H trivial: |G| at the identity, 0 elsewhere
    CHECK(zeta_tilde(g, Subgroup::trivial(g), 0) == 6);
    CHECK(zeta_tilde(g, Subgroup::trivial(g), 3) == 0);

    // normality is required
    Elem t = 0;
    for (std::size_t x = 0; x < 6; ++x)
        if (g->element_order(static_cast<Elem>(x)) == 2) t = static_cast<Elem>(x);
    CHECK_THROWS_AS(zeta_tilde(g, generated_subgroup(g, {t}), 0), NotNormal);
}

TEST_CASE("zeta tilde 2n") {
    auto g = build_group(GroupSpec::symmetric(3));
    Subgroup a3 = derived_subgroup(g);
    CHECK(zeta_tilde_2n(g, a3, 0, 1) == zeta_tilde(g, a3, 0));
    CHECK(zeta_tilde_2n(g, a3, 0, 2) == 162); // python-enumerated oracle
    for (std::size_t e = 0; e < 6; ++e)
        CHECK(zeta_tilde_2n(g, a3, static_cast<Elem>(e), 2) ==
              oracle_zeta_tilde_2n_2(g, a3, static_cast<Elem>(e)));

    // abelian: all commutators trivial
    auto c6 = build_group(GroupSpec::cyclic(6));
    Subgroup h = generated_subgroup(c6, {2});
    CHECK(zeta_tilde_2n(c6, h, 0, 2) == big_pow(BigInt(3) * 6, 2));
    CHECK(zeta_tilde_2n(c6, h, 1, 2) == 0);

    // another fixture against the oracle
    auto d8 = build_group(GroupSpec::dihedral(8));
    Subgroup r4 = generated_subgroup(d8, {1}); // the rotation subgroup
    REQUIRE(r4.order() == 4);
    for (std::size_t e = 0; e < 8; ++e)
        CHECK(zeta_tilde_2n(d8, r4, static_cast<Elem>(e), 2) ==
              oracle_zeta_tilde_2n_2(d8, r4, static_cast<Elem>(e)));
}

TEST_CASE("zeta tilde 3 allows non-normal subgroups") {
    auto g = build_group(GroupSpec::symmetric(3));
    Elem t = 0;
    for (std::size_t x = 0; x < 6; ++x)
        if (g->element_order(static_cast<Elem>(x)) == 2) t = static_cast<Elem>(x);
    Subgroup ht = generated_subgroup(g, {t});
    CHECK(zeta_tilde_3(g, ht, 0) == 48); // python-enumerated oracle over 72 triples
    for (std::size_t e = 0; e < 6; ++e)
        CHECK(zeta_tilde_3(g, ht, static_cast<Elem>(e)) == oracle_zeta_tilde_3(g, ht, static_cast<Elem>(e)));

    // H = G gives |G| * zeta(g)
    Subgroup whole = Subgroup::whole(g);
    CHECK(zeta_tilde_3(g, whole, 0) == BigInt(6) * frobenius_zeta(g, 0));
    // H trivial: |G|^2 at the identity
    CHECK(zeta_tilde_3(g, Subgroup::trivial(g), 0) == 36);
    CHECK(zeta_tilde_3(g, Subgroup::trivial(g), 3) == 0);
}

TEST_CASE("both zeta tilde sum forms agree on fixtures") {
    auto s4 = build_group(GroupSpec::symmetric(4));
    Subgroup a4 = derived_subgroup(s4);
    for (Elem e : {Elem(0), a4.elements()[1]}) CHECK_NOTHROW(zeta_tilde(s4, a4, e, true));
    auto d12 = build_group(GroupSpec::dihedral(12));
    CHECK_NOTHROW(zeta_tilde(d12, derived_subgroup(d12), 0, true));
}

TEST_CASE("central type report") {
    CHECK(central_type_report(build_group(GroupSpec::cyclic(6))).is_central_type);
    auto d8_report = central_type_report(build_group(GroupSpec::dihedral(8)));
    CHECK(d8_report.is_central_type);
    CHECK(d8_report.cd.degrees == std::vector<unsigned>{1, 2});
    CHECK(d8_report.center_index == 4);
    REQUIRE(d8_report.cd.m_g.has_value());
    CHECK(*d8_report.cd.m_g == 2);

    auto es = central_type_report(build_group(GroupSpec::extraspecial(3, 1, true)));
    CHECK(es.is_central_type);
    CHECK(es.cd.degrees.size() == 2);

    CHECK_FALSE(central_type_report(build_group(GroupSpec::symmetric(4))).is_central_type);
    CHECK_FALSE(central_type_report(build_group(GroupSpec::symmetric(3))).is_central_type);
    CHECK_FALSE(central_type_report(build_group(GroupSpec::cyclic(9))).cd.m_g.has_value());
}

TEST_CASE("decomposition recognizes characters") {
    auto g = build_group(GroupSpec::symmetric(3));
    auto t = character_table(g);

    // zeta^omega from counted fibers is a character (Thm 3.1.4 instrument)
    auto fiber = word_fiber(AdmissibleWord::commutator().word(), *g, 2);
    ClassFunction f = class_function_from_counts(g, t.classes, fiber);
    auto dec = decompose(t, f);
    CHECK(dec.is_character);
    // Frobenius: multiplicity of chi in zeta is |G|/chi(1)
    for (std::size_t i = 0; i < t.k(); ++i) CHECK(dec.multiplicities[i] == BigInt(6 / t.degrees[i]));

    // zeta~ is a character too
    std::vector<BigInt> zt(g->order());
    Subgroup a3 = derived_subgroup(g);
    for (std::size_t e = 0; e < g->order(); ++e) zt[e] = oracle_zeta_tilde(g, a3, static_cast<Elem>(e));
    CHECK(decompose(t, class_function_from_counts(g, t.classes, zt)).is_character);

    // a non-character class function
    ClassFunction bad{g, t.classes, {Complex(1, 0), Complex(7, 0), Complex(-2, 0)}};
    CHECK_FALSE(decompose(t, bad).is_character);
}

TEST_CASE("character table size limit") {
    CHECK_THROWS_AS(character_table(build_group(GroupSpec::cyclic(2100)), 2000), BudgetExceeded);
}
