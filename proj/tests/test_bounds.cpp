#include <catch2/catch_amalgamated.hpp>

#include "commdeg/bounds.hpp"
#include "commdeg/group_build.hpp"

using namespace commdeg;

namespace {
const BoundEntry* find_entry(const BoundsReport& r, const std::string& stmt) {
    for (const auto& e : r.entries)
        if (e.statement == stmt) return &e;
    return nullptr;
}
} // namespace

TEST_CASE("bounds suite holds on hand-picked instances") {
    auto s3 = build_group(GroupSpec::symmetric(3));
    BoundsParams p;
    p.H = derived_subgroup(s3);
    p.K = Subgroup::whole(s3);
    p.g = derived_subgroup(s3).elements()[1];
    p.n = 3;
    p.d = 2;
    p.word = AdmissibleWord::commutator();
    p.word_n = 2;
    auto report = bounds_suite(s3, p);
    INFO([&] {
        std::string s;
        for (const auto& e : report.entries)
            if (e.applicable && !e.holds)
                s += e.statement + ": " + e.lhs.str() + " " + e.relation + " " + e.rhs.str() + "\n";
        return s;
    }());
    CHECK(report.failures() == 0);

    auto d8 = build_group(GroupSpec::dihedral(8));
    BoundsParams pd;
    pd.H = generated_subgroup(d8, {1});
    pd.K = Subgroup::whole(d8);
    pd.g = Elem(2);
    pd.n = 2;
    pd.word = AdmissibleWord::commutator();
    auto rd = bounds_suite(d8, pd);
    CHECK(rd.failures() == 0);

    // Thm 2.4.1 equality is attained exactly on D8
    const BoundEntry* e241 = find_entry(rd, "Thm-2.4.1");
    REQUIRE(e241);
    CHECK(e241->equality_attained);

    auto s4 = build_group(GroupSpec::symmetric(4));
    BoundsParams ps;
    ps.H = derived_subgroup(s4);
    ps.K = Subgroup::whole(s4);
    ps.g = derived_subgroup(s4).elements()[1];
    ps.n = 3;
    CHECK(bounds_suite(s4, ps).failures() == 0);
}

TEST_CASE("simple-group bound applies to A5") {
    auto a5 = build_group(GroupSpec::alternating(5));
    BoundsParams p;
    p.g = derived_subgroup(a5).elements()[1];
    p.n = 2;
    auto report = bounds_suite(a5, p);
    const BoundEntry* e = find_entry(report, "Prop-4.2.3");
    REQUIRE(e);
    CHECK(e->applicable);
    CHECK(e->holds);
    // |Pr^2_g - 1/60| <= 1/12 - 1/60 exactly at n = 2
    Rational dev = (pr_n_g(a5, 2, *p.g) - Rational(1, 60)).abs();
    CHECK(dev <= Rational(1, 12) - Rational(1, 60));

    // S4 is not simple: entry inapplicable
    auto s4 = build_group(GroupSpec::symmetric(4));
    BoundsParams ps;
    ps.g = derived_subgroup(s4).elements()[1];
    auto rs = bounds_suite(s4, ps);
    const BoundEntry* es = find_entry(rs, "Prop-4.2.3");
    REQUIRE(es);
    CHECK_FALSE(es->applicable);
}

TEST_CASE("equality conditions of Prop 4.3.3 and 4.3.4 are bidirectional on the three fixtures") {
    // D8 and Q8: cd = {1,2}, |G'| = 2: equalities attained at d = 2
    for (auto g : {build_group(GroupSpec::dihedral(8)), build_group(GroupSpec::generalized_quaternion(8))}) {
        for (Elem e : derived_subgroup(g).elements()) {
            BoundsParams p;
            p.g = e;
            p.n = 3;
            p.d = 2;
            auto report = bounds_suite(g, p);
            for (const char* stmt : {"Prop-4.3.3-1", "Prop-4.3.3-2", "Prop-4.3.4-1", "Prop-4.3.4-2"}) {
                const BoundEntry* entry = find_entry(report, stmt);
                REQUIRE(entry);
                CHECK(entry->holds); // holds encodes the iff in both directions
            }
            const BoundEntry* one = find_entry(report, "Prop-4.3.3-1");
            CHECK(one->equality_attained == (e == 0));
            const BoundEntry* two = find_entry(report, "Prop-4.3.3-2");
            CHECK(two->equality_attained == (e != 0));
        }
    }
    // ES(3,1): |G'| = 3, cd = {1,3}: the g != 1 equality cases must NOT attain
    auto es = build_group(GroupSpec::extraspecial(3, 1, true));
    for (Elem e : derived_subgroup(es).elements()) {
        BoundsParams p;
        p.g = e;
        p.n = 2;
        p.d = 3;
        auto report = bounds_suite(es, p);
        for (const char* stmt : {"Prop-4.3.3-1", "Prop-4.3.3-2", "Prop-4.3.4-1", "Prop-4.3.4-2"}) {
            const BoundEntry* entry = find_entry(report, stmt);
            REQUIRE(entry);
            CHECK(entry->holds);
        }
        CHECK(find_entry(report, "Prop-4.3.3-1")->equality_attained == (e == 0));
        CHECK_FALSE(find_entry(report, "Prop-4.3.3-2")->equality_attained);
    }
}

TEST_CASE("factor-2 diagnostic entry never gates") {
    auto s3 = build_group(GroupSpec::symmetric(3));
    BoundsParams p;
    p.H = derived_subgroup(s3);
    p.K = Subgroup::whole(s3);
    p.g = derived_subgroup(s3).elements()[1];
    auto report = bounds_suite(s3, p);
    const BoundEntry* diag = find_entry(report, "Prop-5.2.1-2-diagnostic");
    REQUIRE(diag);
    CHECK_FALSE(diag->applicable);
    CHECK(diag->detail == "factor-2 value fails here"); // the documented counterexample
    const BoundEntry* weak = find_entry(report, "Prop-5.2.1-2-weakened");
    REQUIRE(weak);
    CHECK(weak->applicable);
    CHECK(weak->holds);
    CHECK(weak->equality_attained); // tight on this instance
}

TEST_CASE("5.2.x monotonicity with nested subgroups") {
    auto s4 = build_group(GroupSpec::symmetric(4));
    Subgroup v4 = derived_subgroup(build_group(GroupSpec::alternating(4)));
    // rebuild V4 inside S4: the derived subgroup of A4 embedded in S4 is the
    // set of double transpositions + identity = derived of derived of S4
    Subgroup a4 = derived_subgroup(s4);
    GroupPtr a4g = subgroup_as_group(a4, "A4");
    Subgroup k1 = derived_subgroup(s4); // A4 inside S4
    BoundsParams p;
    p.H = generated_subgroup(s4, {k1.elements()[1]});
    p.K = k1;
    p.K2 = Subgroup::whole(s4);
    p.H2 = k1;
    p.g = Elem(0);
    auto report = bounds_suite(s4, p);
    CHECK(report.failures() == 0);
    const BoundEntry* e524 = find_entry(report, "Prop-5.2.4");
    REQUIRE(e524);
    CHECK(e524->applicable);
    CHECK(e524->holds);
    const BoundEntry* e526 = find_entry(report, "Prop-5.2.6-g1");
    REQUIRE(e526);
    CHECK(e526->holds);
}

TEST_CASE("cor 5.1.6 on the s3 fixture") {
    auto s3 = build_group(GroupSpec::symmetric(3));
    BoundsParams p;
    p.H = derived_subgroup(s3); // A3: C_G(x) = A3 for nontrivial x
    p.K = Subgroup::whole(s3);
    p.g = Elem(0);
    auto report = bounds_suite(s3, p);
    const BoundEntry* valfix = find_entry(report, "Cor-5.1.6-value");
    REQUIRE(valfix);
    CHECK(valfix->applicable);
    CHECK(valfix->holds); // Pr(A3, S3) = 1/3 + 2/6 = 2/3
    CHECK(valfix->lhs == Rational(2, 3));
}
