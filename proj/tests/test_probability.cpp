#include <catch2/catch_amalgamated.hpp>

#include "commdeg/group_build.hpp"
#include "commdeg/catalog.hpp"
#include "commdeg/probability.hpp"

using namespace commdeg;

TEST_CASE("pr of standard groups") {
    CHECK(pr(build_group(GroupSpec::cyclic(12))) == Rational(1));
    CHECK(pr(build_group(GroupSpec::dihedral(8))) == Rational(5, 8));
    CHECK(pr(build_group(GroupSpec::semidirect_cyclic(7, 3, 2))) == Rational(5, 21));
    CHECK(pr(build_group(GroupSpec::symmetric(3))) == Rational(1, 2));
    CHECK(pr(build_group(GroupSpec::symmetric(4))) == Rational(5, 24));
    CHECK(pr(build_group(GroupSpec::symmetric(5))) == Rational(7, 120));
    CHECK(pr(build_group(GroupSpec::alternating(5))) == Rational(1, 12));
    CHECK(pr(build_group(GroupSpec::extraspecial(3, 1, true))) == Rational(11, 27));
    CHECK(pr(build_group(GroupSpec::modular_p3(3))) == Rational(11, 27));
    CHECK(pr(build_group(GroupSpec::wreath_cyclic(3))) == Rational(17, 81));
    CHECK(pr(build_group(GroupSpec::extraspecial(7, 1, true))) == Rational(55, 343));
    CHECK(pr(build_group(GroupSpec::extraspecial(5, 1, true))) == Rational(29, 125));
}

TEST_CASE("pr is multiplicative over direct products") {
    auto a = build_group(GroupSpec::symmetric(3));
    auto b = build_group(GroupSpec::dihedral(8));
    auto prod = build::direct_product(a, b, 1000);
    CHECK(pr(prod) == pr(a) * pr(b));
}

TEST_CASE("pr_g") {
    auto s3 = build_group(GroupSpec::symmetric(3));
    CHECK(pr_g(s3, 0) == pr(s3));
    auto cc = conjugacy_classes(*s3);
    Elem threecycle = cc.classes[1][0];
    Elem transposition = cc.classes[2][0];
    CHECK(pr_g(s3, threecycle) == Rational(1, 4));
    CHECK(pr_g(s3, transposition) == Rational(0)); // outside G'

    auto d8 = build_group(GroupSpec::dihedral(8));
    CHECK(pr_g(d8, 2) == Rational(3, 8)); // r^2

    // sum over elements = Pr-related total: sum_g zeta(g) = |G|^2
    BigInt total = 0;
    for (std::size_t e = 0; e < s3->order(); ++e) total += commutator_fiber(s3)[e];
    CHECK(total == 36);
}

TEST_CASE("pr_hk") {
    auto s3 = build_group(GroupSpec::symmetric(3));
    Subgroup a3 = derived_subgroup(s3);
    Subgroup whole = Subgroup::whole(s3);
    CHECK(pr_hk(whole, whole, 0) == pr(s3));
    CHECK(pr_hk(a3, whole, 0) == Rational(2, 3)); // two S3-classes inside A3

    // Cor 5.1.4: Pr(H, K) = k_K(H)/|H| for normal H
    for (auto g : {build_group(GroupSpec::symmetric(4)), build_group(GroupSpec::dihedral(12))}) {
        Subgroup der = derived_subgroup(g);
        Subgroup wh = Subgroup::whole(g);
        auto cc = conjugacy_classes(*g);
        std::size_t classes_inside = 0;
        for (const auto& cls : cc.classes) {
            bool inside = true;
            for (Elem e : cls)
                if (!der.contains(e)) inside = false;
            if (inside) ++classes_inside;
        }
        CHECK(pr_hk(der, wh, 0) == Rational(BigInt(classes_inside), BigInt(der.order())));
    }

    // symmetry from Prop 5.1.1 on a sample
    auto d8 = build_group(GroupSpec::dihedral(8));
    Subgroup rot = generated_subgroup(d8, {1});
    Subgroup refl = generated_subgroup(d8, {4});
    for (std::size_t e = 0; e < 8; ++e)
        CHECK(pr_hk(rot, refl, static_cast<Elem>(e)) ==
              pr_hk(refl, rot, d8->inv(static_cast<Elem>(e))));
}

TEST_CASE("pr_word") {
    auto s3 = build_group(GroupSpec::symmetric(3));
    AdmissibleWord comm = AdmissibleWord::commutator();
    CHECK(pr_word(s3, comm, 0, 2) == Rational(1, 2));
    CHECK(pr_word(build_group(GroupSpec::cyclic(10)), comm, 0, 2) == Rational(1));

    Rational total(0);
    for (std::size_t e = 0; e < s3->order(); ++e) total += pr_word(s3, comm, static_cast<Elem>(e), 2);
    CHECK(total == Rational(1));
}

TEST_CASE("generalized commutator: even n equals the literal word fiber") {
    for (auto g : {build_group(GroupSpec::symmetric(3)), build_group(GroupSpec::dihedral(8)),
                   build_group(GroupSpec::alternating(4))}) {
        for (unsigned n : {2u, 4u}) {
            std::vector<Syllable> sylls;
            for (unsigned i = 1; i <= n; ++i) sylls.push_back({i, 1});
            for (unsigned i = 1; i <= n; ++i) sylls.push_back({i, -1});
            auto literal = word_fiber(Word(sylls), *g, n);
            auto fiber = generalized_commutator_fiber(g, n);
            CHECK(literal == fiber);
        }
    }
}

TEST_CASE("odd-length literal words degenerate to a free coordinate") {
    // the literal fiber of x1 x2 x3 x1^-1 x2^-1 x3^-1 is |G| times the
    // commutator fiber, for every group; the chapter-4 quantity at odd n is
    // the character-side object instead
    for (auto g : {build_group(GroupSpec::symmetric(3)), build_group(GroupSpec::dihedral(8))}) {
        auto w3 = parse_word("x1 x2 x3 x1^-1 x2^-1 x3^-1");
        auto literal = word_fiber(w3, *g, 3);
        const auto& z2 = commutator_fiber(g);
        for (std::size_t e = 0; e < g->order(); ++e)
            CHECK(literal[e] == z2[e] * BigInt(g->order()));
    }
}

TEST_CASE("pr_n_g closed-form values") {
    auto d8 = build_group(GroupSpec::dihedral(8));
    auto q8 = build_group(GroupSpec::generalized_quaternion(8));
    for (unsigned n : {2u, 3u, 4u}) {
        Rational expect(big_pow(BigInt(2), n) + 1, big_pow(BigInt(2), n + 1));
        CHECK(pr_n_g(d8, n, 0) == expect);
        CHECK(pr_n_g(q8, n, 0) == expect);
    }
    CHECK(pr_n_g(d8, 2, 0) == pr_g(d8, 0));
    CHECK(pr_n_g(d8, 3, 2) == Rational(7, 16)); // g = r^2

    auto m27 = build_group(GroupSpec::modular_p3(3));
    for (unsigned n : {2u, 3u, 4u})
        CHECK(pr_n_g(m27, n, 0) == Rational(big_pow(BigInt(3), n) + 2, big_pow(BigInt(3), n + 1)));

    // Prop 4.4.3 on ES(3,1): (1/3)(1 + 2/3^n) at 1, (1/3)(1 - 1/3^n) away
    auto es = build_group(GroupSpec::extraspecial(3, 1, true));
    Subgroup der = derived_subgroup(es);
    CHECK(pr_n_g(es, 3, 0) == Rational(29, 81));
    CHECK(pr_n_g(es, 3, der.elements()[1]) == Rational(26, 81));

    // Prop 4.4.5 on C7:C3 at n = 3: (27+6)/(7*27) and (27-1)/(7*27)
    auto sd = build_group(GroupSpec::semidirect_cyclic(7, 3, 2));
    Subgroup sder = derived_subgroup(sd);
    CHECK(pr_n_g(sd, 3, 0) == Rational(11, 63));
    CHECK(pr_n_g(sd, 3, sder.elements()[1]) == Rational(26, 189));
}

TEST_CASE("pr_n_g distributions are exact") {
    for (auto g : {build_group(GroupSpec::symmetric(4)), build_group(GroupSpec::alternating(5))}) {
        for (unsigned n : {2u, 3u}) {
            Rational total(0);
            auto fiber = generalized_commutator_fiber(g, n);
            BigInt gn = big_pow(BigInt(g->order()), n);
            for (std::size_t e = 0; e < g->order(); ++e) {
                CHECK(fiber[e] >= 0);
                total += Rational(fiber[e], gn);
            }
            CHECK(total == Rational(1));
        }
        // non-increasing in n at the identity
        CHECK(pr_n_g(g, 3, 0) <= pr_n_g(g, 2, 0));
        CHECK(pr_n_g(g, 4, 0) <= pr_n_g(g, 3, 0));
    }
}

TEST_CASE("spectral gate validates on the built-in list") {
    CHECK(validate_spectral_gate(detail::default_gate_groups()));
    CHECK(spectral_gate_state() == SpectralGate::Enabled);
}

TEST_CASE("theorem 2.2.6 checker") {
    auto w = theorem_2_2_6_check(build_group(GroupSpec::wreath_cyclic(3)));
    CHECK(w.applicable);
    CHECK(w.centralizer_abelian);
    CHECK(w.measured_pr == Rational(17, 81));
    CHECK(w.measured_center_index == 27);
    CHECK(w.index_equalities_hold);
    CHECK(w.passed);

    auto d16 = theorem_2_2_6_check(build_group(GroupSpec::dihedral(16)));
    CHECK(d16.applicable);
    CHECK(d16.passed);
    CHECK(d16.measured_pr == Rational(7, 16));

    CHECK_FALSE(theorem_2_2_6_check(build_group(GroupSpec::symmetric(3))).applicable);
    CHECK_FALSE(theorem_2_2_6_check(build_group(GroupSpec::extraspecial(3, 1, true))).applicable);
}

TEST_CASE("closed form helpers") {
    auto d8 = build_group(GroupSpec::dihedral(8));
    CHECK(thm_2_4_1_bound(d8) == Rational(5, 8)); // equality case
    CHECK(pr(d8) == thm_2_4_1_bound(d8));

    auto form = prop_4_4_3_form(d8, 3);
    REQUIRE(form.applicable);
    CHECK(form.p == 2);
    CHECK(form.k == 1);
    CHECK(form.at_identity == Rational(9, 16));
    CHECK(form.elsewhere == Rational(7, 16));

    CHECK_FALSE(prop_4_4_3_form(build_group(GroupSpec::symmetric(3)), 2).applicable);

    auto sd_form = semidirect_closed_form(7, 3, 2);
    CHECK(sd_form.at_identity == Rational(5, 21));
    CHECK(sd_form.elsewhere == Rational(8, 63));

    CHECK(prop_4_3_7_value(2, 3) == Rational(9, 16));
    CHECK(prop_4_3_7_value(3, 2) == Rational(11, 27));
}

TEST_CASE("abelian groups have pr 1 and trivial fibers") {
    for (auto& g : abelian_groups_of_order(16)) {
        CHECK(pr(g) == Rational(1));
        CHECK(pr_n_g(g, 2, 0) == Rational(1));
        CHECK(pr_n_g(g, 3, 0) == Rational(1));
    }
}
