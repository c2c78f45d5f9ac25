#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "commdeg/group_build.hpp"
#include "commdeg/words.hpp"

using namespace commdeg;

TEST_CASE("word parsing") {
    Word w = parse_word("x1 x2 x1^-1 x2^-1");
    CHECK(w.syllables().size() == 4);
    CHECK(w.arity() == 2);
    CHECK(w.format() == "x1 x2 x1^-1 x2^-1");

    // adjacent syllables merge
    Word m = parse_word("x1 x1");
    REQUIRE(m.syllables().size() == 1);
    CHECK(m.syllables()[0].exponent == 2);
    CHECK(parse_word("x1 x1^-1 x2").syllables().size() == 1); // full cancellation of x1

    CHECK_THROWS_AS(parse_word("x1 x2^0"), ParseError);
    CHECK_THROWS_AS(parse_word("x0"), ParseError);
    CHECK_THROWS_AS(parse_word("y1"), ParseError);
    CHECK_THROWS_AS(parse_word(""), ParseError);
    CHECK_THROWS_AS(parse_word("x1^"), ParseError);

    // round trip through the formatter
    for (const char* text : {"x1 x2 x1^-1 x2^-1", "x3^2 x1^-4", "x2"}) {
        Word a = parse_word(text);
        CHECK(parse_word(a.format()) == a);
    }
}

TEST_CASE("admissibility") {
    CHECK(check_admissible(parse_word("x1 x2 x1^-1 x2^-1")).has_value());
    CHECK(check_admissible(parse_word("x1 x2 x3 x1^-1 x2^-1 x3^-1")).has_value());

    auto r1 = AdmissibleWord::why_not(parse_word("x1 x2 x1^-1"));
    REQUIRE(r1.has_value());
    CHECK(r1->generator == 2);

    auto r2 = AdmissibleWord::why_not(parse_word("x1^2 x2 x1^-2 x2^-1"));
    REQUIRE(r2.has_value());
    CHECK(r2->generator == 1);

    CHECK_FALSE(check_admissible(parse_word("x1 x2 x1 x2^-1 x1^-2")).has_value());
}

TEST_CASE("evaluation") {
    auto g = build_group(GroupSpec::symmetric(3));
    Word w = parse_word("x1 x2 x1^-1 x2^-1");
    CHECK(evaluate(w, {0, 0}, *g) == 0);

    Subgroup der = derived_subgroup(g);
    for (std::size_t x = 0; x < g->order(); ++x)
        for (std::size_t y = 0; y < g->order(); ++y) {
            Elem v = evaluate(w, {static_cast<Elem>(x), static_cast<Elem>(y)}, *g);
            CHECK(v == g->commutator(static_cast<Elem>(x), static_cast<Elem>(y)));
            CHECK(der.contains(v)); // commutators lie in G'
        }

    // admissible words evaluate to the identity on abelian groups
    auto c12 = build_group(GroupSpec::cyclic(12));
    Word w3 = parse_word("x1 x2 x3 x1^-1 x3^-1 x2^-1");
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(0, 11);
    for (int i = 0; i < 50; ++i)
        CHECK(evaluate(w3, {static_cast<Elem>(pick(rng)), static_cast<Elem>(pick(rng)),
                            static_cast<Elem>(pick(rng))}, *c12) == 0);

    CHECK_THROWS_AS(evaluate(w, {0}, *g), ArityMismatch);
    CHECK_THROWS_AS(evaluate(w, {0, 200}, *g), ElementOutOfRange);
}

TEST_CASE("counting solutions: frozen S3 values") {
    auto g = build_group(GroupSpec::symmetric(3));
    AdmissibleWord comm = AdmissibleWord::commutator();
    CHECK(count_solutions(comm, *g, 0, 2) == 18);
    // 3-cycles get 9, transpositions get 0
    BigInt total = 0;
    for (std::size_t x = 0; x < 6; ++x) {
        BigInt c = count_solutions(comm, *g, static_cast<Elem>(x), 2);
        total += c;
        unsigned o = g->element_order(static_cast<Elem>(x));
        if (o == 3) CHECK(c == 9);
        if (o == 2) CHECK(c == 0);
    }
    CHECK(total == 36);
}

TEST_CASE("counting on abelian groups") {
    auto g = build_group(GroupSpec::cyclic(8));
    AdmissibleWord comm = AdmissibleWord::commutator();
    CHECK(count_solutions(comm, *g, 0, 2) == 64);
    CHECK(count_solutions(comm, *g, 3, 2) == 0);
}

TEST_CASE("free coordinates scale counts exactly") {
    auto g = build_group(GroupSpec::symmetric(3));
    AdmissibleWord comm = AdmissibleWord::commutator();
    CHECK(count_solutions(comm, *g, 0, 3) == BigInt(18) * 6);
    CHECK(count_solutions(comm, *g, 4, 5) == BigInt(9) * 6 * 6 * 6);
}

TEST_CASE("budget") {
    auto g = build_group(GroupSpec::symmetric(4));
    AdmissibleWord comm = AdmissibleWord::commutator();
    CHECK_THROWS_AS(count_solutions(comm, *g, 0, 4, BigInt(100000)), BudgetExceeded);
}

TEST_CASE("worker count does not change the fiber") {
    auto g = build_group(GroupSpec::alternating(4));
    Word w = parse_word("x1 x2 x1^-1 x2^-1");
    auto f1 = word_fiber(w, *g, 2, BigInt(1000000000), 1);
    auto f3 = word_fiber(w, *g, 2, BigInt(1000000000), 3);
    auto f4 = word_fiber(w, *g, 2, BigInt(1000000000), 4);
    CHECK(f1 == f3);
    CHECK(f1 == f4);
}

TEST_CASE("fibers are constant on conjugacy classes") {
    std::mt19937_64 rng(13);
    for (auto g : {build_group(GroupSpec::symmetric(3)), build_group(GroupSpec::dihedral(8)),
                   build_group(GroupSpec::alternating(4))}) {
        auto cc = conjugacy_classes(*g);
        for (int i = 0; i < 3; ++i) {
            AdmissibleWord w = random_admissible_word(rng, 3);
            unsigned n = std::max(w.word().arity(), 2u);
            auto fiber = word_fiber(w.word(), *g, n);
            for (const auto& cls : cc.classes)
                for (Elem e : cls) CHECK(fiber[e] == fiber[cls[0]]);
            BigInt total = 0;
            for (const BigInt& v : fiber) total += v;
            CHECK(total == big_pow(BigInt(g->order()), n));
        }
    }
}

TEST_CASE("fiber distribution statistics") {
    auto c6 = build_group(GroupSpec::cyclic(6));
    auto dist = fiber_distribution(AdmissibleWord::commutator(), *c6, 2);
    CHECK(dist.max_deviation == Rational(5, 6)); // all mass at the identity
    CHECK(dist.image_size == 1);

    auto s3 = build_group(GroupSpec::symmetric(3));
    auto d2 = fiber_distribution(AdmissibleWord::commutator(), *s3, 2);
    CHECK(d2.coverage == Rational(1, 2));
    CHECK(d2.counts[0] == 18);

    auto a5 = build_group(GroupSpec::alternating(5));
    auto d3 = fiber_distribution(AdmissibleWord::commutator(), *a5, 2);
    CHECK(d3.coverage == Rational(1)); // every element of A5 is a commutator
    CHECK(d3.max_deviation == Rational(1, 12) - Rational(1, 60));
}

TEST_CASE("random admissible words are admissible") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 40; ++i) {
        AdmissibleWord w = random_admissible_word(rng, 3);
        CHECK(AdmissibleWord::check(w.word()));
        CHECK(w.word().arity() >= 1);
        CHECK(w.word().arity() <= 3);
    }
}
