#include <catch2/catch_amalgamated.hpp>

#include "commdeg/group_build.hpp"
#include "commdeg/isoclinism.hpp"

using namespace commdeg;

TEST_CASE("commutator map tabulation") {
    auto c6 = build_group(GroupSpec::cyclic(6));
    auto cm = commutator_map(c6);
    CHECK(cm.central_quotient->order() == 1);
    CHECK(cm.at(0, 0) == 0);

    auto d8 = build_group(GroupSpec::dihedral(8));
    auto cmd = commutator_map(d8);
    CHECK(cmd.central_quotient->order() == 4);
    CHECK(cmd.derived.order() == 2);
    // some coset pair maps onto the nontrivial commutator
    bool nontrivial = false;
    for (Elem a = 0; a < 4; ++a)
        for (Elem b = 0; b < 4; ++b)
            if (cmd.at(a, b) != 0) nontrivial = true;
    CHECK(nontrivial);

    auto s3 = build_group(GroupSpec::symmetric(3));
    auto cms = commutator_map(s3);
    CHECK(cms.central_quotient->order() == 6);
    CHECK(cms.derived.order() == 3);
}

TEST_CASE("a group is isoclinic to itself") {
    auto g = build_group(GroupSpec::symmetric(4));
    auto w = find_isoclinism(g, g);
    REQUIRE(w.has_value());
    // identity witness comes first in enumeration order
    for (std::size_t i = 0; i < w->phi.size(); ++i) CHECK(w->phi[i] == i);
}

TEST_CASE("D8 and Q8 are isoclinic, with exact word-probability invariance") {
    auto d8 = build_group(GroupSpec::dihedral(8));
    auto q8 = build_group(GroupSpec::generalized_quaternion(8));
    auto w = find_isoclinism(d8, q8);
    REQUIRE(w.has_value());
    CHECK(find_isoclinism(q8, d8).has_value()); // symmetric

    auto inv = verify_invariance(*w, AdmissibleWord::commutator(), 2);
    CHECK(inv.holds);
    CHECK(inv.values_compared == 2);

    // Pr_1 = 5/8 on both sides; Pr at the nontrivial derived element is 3/8
    Elem r2 = derived_subgroup(d8).elements()[1];
    CHECK(pr_word(d8, AdmissibleWord::commutator(), r2, 2) == Rational(3, 8));
    CHECK(pr_word(q8, AdmissibleWord::commutator(), w->map_derived(r2), 2) == Rational(3, 8));
}

TEST_CASE("the two extraspecial groups of order 27 are isoclinic") {
    auto plus = build_group(GroupSpec::extraspecial(3, 1, true));
    auto minus = build_group(GroupSpec::extraspecial(3, 1, false));
    auto w = find_isoclinism(plus, minus);
    REQUIRE(w.has_value());
    auto inv = verify_invariance(*w, AdmissibleWord::commutator(), 2);
    CHECK(inv.holds);
    CHECK(inv.values_compared == 3);
}

TEST_CASE("abelian groups are pairwise isoclinic") {
    auto a = build_group(GroupSpec::cyclic(4));
    auto b = build_group(GroupSpec::direct_product(GroupSpec::cyclic(3), GroupSpec::cyclic(5)));
    auto w = find_isoclinism(a, b);
    REQUIRE(w.has_value());
    CHECK(verify_invariance(*w, AdmissibleWord::commutator(), 2).holds);
}

TEST_CASE("non-isoclinic pairs are rejected") {
    auto d8 = build_group(GroupSpec::dihedral(8));
    auto s3 = build_group(GroupSpec::symmetric(3));
    CHECK_FALSE(find_isoclinism(d8, s3).has_value()); // derived sizes differ
    auto es = build_group(GroupSpec::extraspecial(3, 1, true));
    CHECK_FALSE(find_isoclinism(d8, es).has_value());
    // D8 vs C2^3: same order, derived sizes 2 vs 1
    auto c222 = build_group(GroupSpec::direct_product(
        GroupSpec::cyclic(2), GroupSpec::direct_product(GroupSpec::cyclic(2), GroupSpec::cyclic(2))));
    CHECK_FALSE(find_isoclinism(d8, c222).has_value());
}

TEST_CASE("isoclinic groups share Pr") {
    std::vector<std::pair<GroupPtr, GroupPtr>> pairs = {
        {build_group(GroupSpec::dihedral(8)), build_group(GroupSpec::generalized_quaternion(8))},
        {build_group(GroupSpec::extraspecial(3, 1, true)), build_group(GroupSpec::modular_p3(3))},
        {build_group(GroupSpec::dihedral(8)),
         build_group(GroupSpec::direct_product(GroupSpec::dihedral(8), GroupSpec::cyclic(3)))},
    };
    for (auto& [a, b] : pairs) {
        auto w = find_isoclinism(a, b);
        REQUIRE(w.has_value());
        CHECK(pr(a) == pr(b));
    }
}

TEST_CASE("modular group of order 27 is isoclinic to the heisenberg group") {
    auto m27 = build_group(GroupSpec::modular_p3(3));
    auto heis = build_group(GroupSpec::extraspecial(3, 1, true));
    auto w = find_isoclinism(m27, heis);
    REQUIRE(w.has_value());
    for (unsigned n : {2u, 3u})
        for (Elem e : derived_subgroup(m27).elements())
            CHECK(pr_n_g(m27, n, e) == pr_n_g(heis, n, w->map_derived(e)));
}
