#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commdeg/errors.hpp"
#include "commdeg/group.hpp"
#include "commdeg/perm.hpp"

namespace commdeg {

using Json = nlohmann::ordered_json;

/// Serializes a group in the "cayley-v1" schema: {format, order, table, name}.
inline Json group_to_json(const FiniteGroup& g) {
    Json j;
    j["format"] = "cayley-v1";
    j["order"] = g.order();
    Json rows = Json::array();
    for (std::size_t r = 0; r < g.order(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < g.order(); ++c) row.push_back(g.mul(static_cast<Elem>(r), static_cast<Elem>(c)));
        rows.push_back(std::move(row));
    }
    j["table"] = std::move(rows);
    j["name"] = g.name();
    return j;
}

inline GroupPtr group_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("format") || !j["format"].is_string())
        throw SchemaError("group file must be an object with a \"format\" tag");
    std::string format = j["format"].get<std::string>();
    std::string name = j.value("name", std::string("unnamed"));
    if (format == "cayley-v1") {
        if (!j.contains("order") || !j.contains("table")) throw SchemaError("cayley-v1 needs order and table");
        std::size_t order = j["order"].get<std::size_t>();
        const Json& rows = j["table"];
        if (!rows.is_array() || rows.size() != order) throw SchemaError("table must have `order` rows");
        std::vector<Elem> table;
        table.reserve(order * order);
        for (const Json& row : rows) {
            if (!row.is_array() || row.size() != order) throw SchemaError("table rows must have `order` entries");
            for (const Json& v : row) {
                long long x = v.get<long long>();
                if (x < 0 || static_cast<std::size_t>(x) >= order) throw SchemaError("table entry out of range");
                table.push_back(static_cast<Elem>(x));
            }
        }
        return make_group(order, std::move(table), name); // FiniteGroup validation applies
    }
    if (format == "perm-v1") {
        if (!j.contains("degree") || !j.contains("generators")) throw SchemaError("perm-v1 needs degree and generators");
        std::size_t degree = j["degree"].get<std::size_t>();
        std::vector<Perm> gens;
        for (const Json& g : j["generators"]) {
            Perm p;
            for (const Json& v : g) p.push_back(v.get<int>());
            gens.push_back(std::move(p));
        }
        return group_from_permutations(degree, gens, name);
    }
    throw SchemaError("unknown group file format \"" + format + "\"");
}

inline GroupPtr load_group_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open group file " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("invalid JSON in " + path + ": " + e.what());
    }
    return group_from_json(j);
}

inline void save_group_file(const FiniteGroup& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write group file " + path);
    out << group_to_json(g).dump() << "\n";
}

} // namespace commdeg
