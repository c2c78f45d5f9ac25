#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commdeg/cli.hpp"

using namespace commdeg;

namespace {
struct CliResult {
    int rc;
    std::string out, err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int rc = cli_dispatch(args, out, err);
    return {rc, out.str(), err.str()};
}

std::string temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "commdeg_test";
    std::filesystem::create_directories(dir);
    return dir.string();
}
} // namespace

TEST_CASE("group spec mini-language") {
    RunConfig cfg;
    CHECK(parse_group_spec("C7", cfg)->order() == 7);
    CHECK(parse_group_spec("D8", cfg)->order() == 8);
    CHECK(parse_group_spec("Q16", cfg)->order() == 16);
    CHECK(parse_group_spec("C7:C3@2", cfg)->order() == 21);
    CHECK(parse_group_spec("M27", cfg)->order() == 27);
    CHECK(parse_group_spec("ES+27", cfg)->order() == 27);
    CHECK(parse_group_spec("ES-27", cfg)->exponent() == 9);
    CHECK(parse_group_spec("C3wrC3", cfg)->order() == 81);
    CHECK(parse_group_spec("S4", cfg)->order() == 24);
    CHECK(parse_group_spec("A5", cfg)->order() == 60);
    CHECK(parse_group_spec("xprod(C3,S3)", cfg)->order() == 18);
    CHECK(parse_group_spec("xprod(xprod(C2,C2),C2)", cfg)->order() == 8);
    CHECK_THROWS_AS(parse_group_spec("E8", cfg), InvalidSpec);
    CHECK_THROWS_AS(parse_group_spec("M28", cfg), InvalidSpec);
    CHECK_THROWS_AS(parse_group_spec("C3wrC5", cfg), InvalidSpec);
}

TEST_CASE("subgroup spec mini-language") {
    RunConfig cfg;
    auto g = parse_group_spec("S3", cfg);
    CHECK(parse_subgroup_spec(g, "derived").order() == 3);
    CHECK(parse_subgroup_spec(g, "center").order() == 1);
    CHECK(parse_subgroup_spec(g, "gen:1").order() == 2);
    CHECK_THROWS_AS(parse_subgroup_spec(g, "gen:99"), ElementOutOfRange);
    CHECK_THROWS_AS(parse_subgroup_spec(g, "everything"), InvalidSpec);
}

TEST_CASE("cli pr subcommand") {
    auto r = run({"pr", "C7:C3@2"});
    CHECK(r.rc == 0);
    CHECK(r.out == "5/21\n");
    CHECK(run({"pr", "C12"}).out == "1\n");
    CHECK(run({"pr", "D8", "-g", "2"}).out == "3/8\n");
}

TEST_CASE("cli exit codes") {
    CHECK(run({}).rc == 2);                         // usage
    CHECK(run({"pr"}).rc == 2);                     // missing argument
    CHECK(run({"pr", "Zorp"}).rc == 1);             // computation error
    CHECK(run({"pr", "C7", "-g", "19"}).rc == 1);   // element out of range
    CHECK(run({"--budget", "10", "pr", "C7"}).rc == 2); // budget below the floor
    CHECK(run({"scan", "--catalog", "/nonexistent-dir"}).rc == 1);
}

TEST_CASE("cli json output is deterministic") {
    auto a = run({"--json", "pr", "D8"});
    auto b = run({"--json", "pr", "D8"});
    CHECK(a.rc == 0);
    CHECK(a.out == b.out);
    Json j = Json::parse(a.out);
    CHECK(j["pr"]["num"] == "5");
    CHECK(j["pr"]["den"] == "8");
    CHECK(j["order"] == 8);
}

TEST_CASE("cli word and zeta subcommands") {
    auto w = run({"word", "S3", "-w", "x1 x2 x1^-1 x2^-1", "-n", "2", "-g", "0"});
    CHECK(w.rc == 0);
    CHECK(w.out.find("18") != std::string::npos);

    auto bad = run({"word", "S3", "-w", "x1 x2 x1^-1", "-n", "2"});
    CHECK(bad.rc == 1);
    CHECK(bad.err.find("not admissible") != std::string::npos);

    CHECK(run({"zeta", "S3"}).out == "18\n");
    CHECK(run({"zeta", "S3", "--variant", "tilde", "--h", "derived"}).out == "12\n");
    CHECK(run({"zeta", "S3", "--variant", "tilde2n", "--h", "derived", "-n", "2"}).out == "162\n");
    CHECK(run({"zeta", "S3", "--variant", "tilde3", "--h", "gen:1"}).out == "48\n");
}

TEST_CASE("cli isoclinic subcommand") {
    CHECK(run({"isoclinic", "D8", "Q8"}).out == "isoclinic\n");
    CHECK(run({"isoclinic", "D8", "S3"}).out == "not isoclinic\n");
    Json j = Json::parse(run({"--json", "isoclinic", "ES+27", "M27"}).out);
    CHECK(j["isoclinic"] == true);
    CHECK(j["phi"].size() == 9);
}

TEST_CASE("group file round trip") {
    std::string dir = temp_dir();
    auto d8 = build_group(GroupSpec::dihedral(8));
    std::string path = dir + "/d8.json";
    save_group_file(*d8, path);
    auto loaded = load_group_file(path);
    REQUIRE(loaded->order() == 8);
    auto iso = find_isomorphism(d8, loaded);
    REQUIRE(iso.has_value());
    for (std::size_t i = 0; i < 8; ++i) CHECK(iso->map[i] == i); // identity relabeling

    // perm-v1
    {
        Json j;
        j["format"] = "perm-v1";
        j["degree"] = 4;
        j["generators"] = Json::array({Json::array({1, 2, 0, 3}), Json::array({0, 2, 3, 1})});
        j["name"] = "A4-from-file";
        std::ofstream out(dir + "/a4.json");
        out << j.dump();
    }
    CHECK(load_group_file(dir + "/a4.json")->order() == 12);

    // malformed: non-latin row
    {
        Json j;
        j["format"] = "cayley-v1";
        j["order"] = 2;
        j["table"] = Json::array({Json::array({0, 0}), Json::array({1, 0})});
        j["name"] = "bad";
        std::ofstream out(dir + "/bad.json");
        out << j.dump();
    }
    CHECK_THROWS_AS(load_group_file(dir + "/bad.json"), ValidationError);
    CHECK_THROWS_AS(load_group_file(dir + "/missing.json"), SchemaError);
}

TEST_CASE("character table cache is a pure memo") {
    std::string dir = temp_dir() + "/cache1";
    std::filesystem::remove_all(dir);
    auto g = build_group(GroupSpec::symmetric(4));

    CharacterTable cold = character_table_cached(g, dir);
    CharacterTable warm = character_table_cached(g, dir); // now read from disk
    REQUIRE(cold.k() == warm.k());
    CHECK(cold.degrees == warm.degrees);
    for (std::size_t r = 0; r < cold.k(); ++r)
        for (std::size_t c = 0; c < cold.k(); ++c) CHECK(cold.value(r, c) == warm.value(r, c));
    CHECK(character_table_to_json(cold).dump() == character_table_to_json(warm).dump());

    // corrupt entry: warn and recompute
    {
        std::string path = dir + "/chartab_" + hash_hex(g->content_hash()) + ".json";
        std::ofstream out(path);
        out << "{not json";
    }
    CharacterTable again = character_table_cached(g, dir);
    CHECK(again.degrees == cold.degrees);
}

TEST_CASE("verify table suite through the cli") {
    auto r = run({"--json", "verify", "--suite", "table"});
    CHECK(r.rc == 0);
    Json j = Json::parse(r.out);
    CHECK(j["failures"] == 0);
    CHECK(j["applicable"] == 44);
}
