#pragma once

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "commdeg/characters.hpp"
#include "commdeg/group_io.hpp"

namespace commdeg {

inline std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline Json character_table_to_json(const CharacterTable& t) {
    Json j;
    j["format"] = "chartab-v1";
    j["group_hash"] = hash_hex(t.group->content_hash());
    j["order"] = t.group->order();
    Json sizes = Json::array(), reps = Json::array();
    for (const auto& c : t.classes->classes) {
        sizes.push_back(c.size());
        reps.push_back(c[0]);
    }
    j["class_sizes"] = std::move(sizes);
    j["class_representatives"] = std::move(reps);
    j["degrees"] = t.degrees;
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r = Json::array();
        for (const Complex& v : row.values) r.push_back(Json::array({v.real(), v.imag()}));
        rows.push_back(std::move(r));
    }
    j["values"] = std::move(rows);
    return j;
}

/// Reads a cached table for the group; any mismatch or parse problem is
/// treated as cache corruption: a warning, and the caller recomputes.
inline std::optional<CharacterTable> cache_get(const std::string& dir, const GroupPtr& g) {
    if (dir.empty()) return std::nullopt;
    std::string path = dir + "/chartab_" + hash_hex(g->content_hash()) + ".json";
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        Json j;
        in >> j;
        if (j.value("format", "") != std::string("chartab-v1")) throw SchemaError("format");
        if (j.value("group_hash", "") != hash_hex(g->content_hash())) throw SchemaError("hash");
        auto classes = std::make_shared<ConjClasses>(conjugacy_classes(*g));
        const Json& sizes = j.at("class_sizes");
        const Json& reps = j.at("class_representatives");
        if (sizes.size() != classes->k() || reps.size() != classes->k()) throw SchemaError("classes");
        for (std::size_t i = 0; i < classes->k(); ++i) {
            if (sizes[i].get<std::size_t>() != classes->classes[i].size()) throw SchemaError("sizes");
            if (reps[i].get<Elem>() != classes->representative(i)) throw SchemaError("reps");
        }
        CharacterTable t;
        t.group = g;
        t.classes = classes;
        for (const Json& d : j.at("degrees")) t.degrees.push_back(d.get<unsigned>());
        for (const Json& row : j.at("values")) {
            ClassFunction f{g, classes, {}};
            for (const Json& v : row) f.values.emplace_back(v[0].get<double>(), v[1].get<double>());
            t.rows.push_back(std::move(f));
        }
        if (t.rows.size() != classes->k() || t.degrees.size() != classes->k())
            throw SchemaError("row count");
        return t;
    } catch (const std::exception& e) {
        std::cerr << "warning: corrupt character-table cache entry " << path << " (" << e.what()
                  << "); recomputing\n";
        return std::nullopt;
    }
}

inline void cache_put(const std::string& dir, const CharacterTable& t) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::string path = dir + "/chartab_" + hash_hex(t.group->content_hash()) + ".json";
    std::ofstream out(path);
    if (!out) return;
    out << character_table_to_json(t).dump() << "\n";
}

/// Cache-aware character table: a pure memo, results identical hot or cold.
inline CharacterTable character_table_cached(const GroupPtr& g, const std::string& cache_dir) {
    if (auto cached = cache_get(cache_dir, g)) return *cached;
    CharacterTable t = character_table(g);
    cache_put(cache_dir, t);
    return t;
}

} // namespace commdeg
