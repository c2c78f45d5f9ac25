#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "commdeg/catalog.hpp"
#include "commdeg/isomorphism.hpp"

using namespace commdeg;

TEST_CASE("file catalog is complete for every covered order") {
    auto groups = load_file_catalog();
    std::map<std::size_t, std::size_t> counts;
    for (const auto& g : groups) ++counts[g->order()];

    // classical number-of-groups values
    const std::map<std::size_t, std::size_t> expected = {
        {1, 1},  {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},  {7, 1},  {8, 5},
        {9, 2},  {10, 2}, {11, 1}, {12, 5}, {13, 1}, {14, 2}, {15, 1}, {16, 14},
        {17, 1}, {18, 5}, {19, 1}, {20, 5}, {21, 2}, {22, 2}, {23, 1}, {24, 15},
        {25, 2}, {26, 2}, {27, 5}, {28, 4}, {29, 1}, {30, 4}, {31, 1}, {32, 51},
        {81, 15}};
    CHECK(counts == expected);
    CHECK(groups.size() == 159);
}

TEST_CASE("small orders are pairwise non-isomorphic") {
    auto groups = load_file_catalog();
    std::map<std::size_t, std::vector<GroupPtr>> by_order;
    for (const auto& g : groups)
        if (g->order() <= 16 || g->order() == 24 || g->order() == 27) by_order[g->order()].push_back(g);
    for (auto& [order, list] : by_order)
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size(); ++j) {
                INFO(list[i]->name() << " vs " << list[j]->name());
                CHECK_FALSE(isomorphic(list[i], list[j]));
            }
}

TEST_CASE("constructor-built groups appear among the files") {
    auto groups = load_file_catalog();
    auto find_match = [&](const GroupPtr& g) {
        for (const auto& f : groups)
            if (f->order() == g->order() && isomorphic(f, g)) return true;
        return false;
    };
    CHECK(find_match(build_group(GroupSpec::wreath_cyclic(3))));     // one of the 15 of order 81
    CHECK(find_match(build_group(GroupSpec::symmetric(4))));
    CHECK(find_match(build_group(GroupSpec::generalized_quaternion(16))));
    CHECK(find_match(build_group(GroupSpec::extraspecial(2, 2, false))));
    CHECK(find_match(fixtures::sl_2_3()));
    CHECK(find_match(build_group(GroupSpec::modular_p3(3))));
}

TEST_CASE("named fixtures build and have the advertised orders") {
    auto fx = named_fixtures();
    std::map<std::size_t, std::size_t> seen;
    for (const auto& g : fx) ++seen[g->order()];
    CHECK(seen[60] == 1);   // A5
    CHECK(seen[120] == 1);  // S5
    CHECK(seen[81] == 1);   // wreath
    CHECK(seen[243] == 2);  // ES(3,2) both types
    CHECK(seen[343] == 1);  // ES(7,1)
    CHECK(seen[729] == 1);  // ES(3,1)^2
    CHECK(seen[189] == 1);
    CHECK(seen[75] == 1);
}

TEST_CASE("abelian generation by partitions") {
    CHECK(abelian_groups_of_order(1).size() == 1);
    CHECK(abelian_groups_of_order(16).size() == 5);
    CHECK(abelian_groups_of_order(36).size() == 4);
    CHECK(abelian_groups_of_order(81).size() == 5);
    auto gs = abelian_groups_of_order(72); // 3 partitions of 3 x 2 of 2
    CHECK(gs.size() == 6);
    for (const auto& g : gs) CHECK(is_abelian(*g));
}
