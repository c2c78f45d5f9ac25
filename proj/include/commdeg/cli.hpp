#pragma once

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commdeg/bounds.hpp"
#include "commdeg/cache.hpp"
#include "commdeg/catalog.hpp"
#include "commdeg/characters.hpp"
#include "commdeg/group_build.hpp"
#include "commdeg/isoclinism.hpp"
#include "commdeg/probability.hpp"
#include "commdeg/verify.hpp"
#include "commdeg/words.hpp"

namespace commdeg {

struct RunConfig {
    unsigned jobs = 1;
    BigInt budget{1000000000};
    std::size_t order_cap = 10000;
    std::string cache_dir;
    bool json = false;
    std::string catalog_dir = default_catalog_dir();

    PrOptions pr_options() const { return PrOptions{budget, jobs}; }
};

/// Group mini-language: C7, D8, Q16, C7:C3@2, M27, ES+27, ES-27, C3wrC3, S4,
/// A5, xprod(A,B), file:PATH.
inline GroupPtr parse_group_spec(const std::string& text, const RunConfig& cfg) {
    auto parse_ll = [](const std::string& s, const std::string& what) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(what);
            return v;
        } catch (const std::exception&) {
            throw InvalidSpec("cannot parse " + what + " in group spec \"" + s + "\"");
        }
    };
    if (text.rfind("file:", 0) == 0) return load_group_file(text.substr(5));
    if (text.rfind("xprod(", 0) == 0 && text.back() == ')') {
        std::string inner = text.substr(6, text.size() - 7);
        int depth = 0;
        std::size_t comma = std::string::npos;
        for (std::size_t i = 0; i < inner.size(); ++i) {
            if (inner[i] == '(') ++depth;
            if (inner[i] == ')') --depth;
            if (inner[i] == ',' && depth == 0) {
                comma = i;
                break;
            }
        }
        if (comma == std::string::npos) throw InvalidSpec("xprod needs two comma-separated specs");
        return build::direct_product(parse_group_spec(inner.substr(0, comma), cfg),
                                     parse_group_spec(inner.substr(comma + 1), cfg), cfg.order_cap);
    }
    // CpwrCp
    {
        std::size_t wr = text.find("wr");
        if (wr != std::string::npos && text.size() > 2 && text[0] == 'C' && wr > 1 &&
            text.find('C', wr) == wr + 2) {
            long long p1 = parse_ll(text.substr(1, wr - 1), "wreath base");
            long long p2 = parse_ll(text.substr(wr + 3), "wreath top");
            if (p1 != p2) throw InvalidSpec("wreath spec must be CpwrCp with equal p");
            return build::wreath_cyclic(p1, cfg.order_cap);
        }
    }
    // Cp:Cs@r
    {
        std::size_t colon = text.find(':');
        if (colon != std::string::npos && text[0] == 'C') {
            std::size_t at = text.find('@');
            if (at == std::string::npos || text[colon + 1] != 'C')
                throw InvalidSpec("semidirect spec is Cp:Cs@r");
            long long p = parse_ll(text.substr(1, colon - 1), "p");
            long long s = parse_ll(text.substr(colon + 2, at - colon - 2), "s");
            long long r = parse_ll(text.substr(at + 1), "r");
            return build::semidirect_cyclic(p, s, r, cfg.order_cap);
        }
    }
    if (text.rfind("ES+", 0) == 0 || text.rfind("ES-", 0) == 0) {
        bool plus = text[2] == '+';
        long long order = parse_ll(text.substr(3), "extraspecial order");
        long long p = smallest_prime_divisor(order);
        long long s = 0, v = order / p;
        while (v > 1) {
            if (v % (p * p) != 0) throw InvalidSpec("extraspecial order must be p^(1+2s)");
            v /= p * p;
            ++s;
        }
        if (s < 1) throw InvalidSpec("extraspecial order must be p^(1+2s) with s >= 1");
        return build::extraspecial(p, s, plus, cfg.order_cap);
    }
    if (text.size() >= 2 && text[0] == 'M') {
        long long order = parse_ll(text.substr(1), "modular group order");
        long long p = smallest_prime_divisor(order);
        if (p * p * p != order) throw InvalidSpec("modular spec is Mp^3");
        return build::modular_p3(p, cfg.order_cap);
    }
    if (text.size() >= 2) {
        long long n = parse_ll(text.substr(1), "order");
        switch (text[0]) {
            case 'C': return build::cyclic(n, cfg.order_cap);
            case 'D': return build::dihedral(n, cfg.order_cap);
            case 'Q': return build::generalized_quaternion(n, cfg.order_cap);
            case 'S': return build::symmetric(n, cfg.order_cap);
            case 'A': return build::alternating(n, cfg.order_cap);
            default: break;
        }
    }
    throw InvalidSpec("unrecognized group spec \"" + text + "\"");
}

/// Subgroup mini-language: gen:e1,e2,... or derived or center.
inline Subgroup parse_subgroup_spec(const GroupPtr& g, const std::string& text) {
    if (text == "derived") return derived_subgroup(g);
    if (text == "center") return center(g);
    if (text == "whole") return Subgroup::whole(g);
    if (text.rfind("gen:", 0) == 0) {
        std::vector<Elem> gens;
        std::stringstream ss(text.substr(4));
        std::string item;
        while (std::getline(ss, item, ',')) {
            long long v = std::stoll(item);
            if (v < 0 || static_cast<std::size_t>(v) >= g->order())
                throw ElementOutOfRange("subgroup generator id " + item);
            gens.push_back(static_cast<Elem>(v));
        }
        return generated_subgroup(g, gens);
    }
    throw InvalidSpec("unrecognized subgroup spec \"" + text + "\" (use gen:..., derived, center)");
}

inline Json rational_to_json(const Rational& r) {
    Json j;
    j["num"] = r.num().str();
    j["den"] = r.den().str();
    return j;
}

namespace cli {

inline Elem checked_elem(const GroupPtr& g, long long e) {
    if (e < 0 || static_cast<std::size_t>(e) >= g->order())
        throw ElementOutOfRange("element id " + std::to_string(e));
    return static_cast<Elem>(e);
}

inline int cmd_pr(const RunConfig& cfg, const std::string& spec, long long g_elt, std::ostream& out) {
    GroupPtr g = parse_group_spec(spec, cfg);
    Rational value = g_elt < 0 ? pr(g) : pr_g(g, checked_elem(g, g_elt), cfg.pr_options());
    if (cfg.json) {
        Json j;
        j["group"] = g->name();
        j["order"] = g->order();
        if (g_elt >= 0) j["g"] = g_elt;
        j["pr"] = rational_to_json(value);
        out << j.dump() << "\n";
    } else {
        out << value.str() << "\n";
    }
    return 0;
}

inline int cmd_prhk(const RunConfig& cfg, const std::string& spec, const std::string& hspec,
                    const std::string& kspec, long long g_elt, std::ostream& out) {
    GroupPtr g = parse_group_spec(spec, cfg);
    Subgroup h = parse_subgroup_spec(g, hspec);
    Subgroup k = parse_subgroup_spec(g, kspec);
    Elem e = g_elt < 0 ? 0 : checked_elem(g, g_elt);
    Rational value = pr_hk(h, k, e, cfg.pr_options());
    if (cfg.json) {
        Json j;
        j["group"] = g->name();
        j["h_order"] = h.order();
        j["k_order"] = k.order();
        j["g"] = e;
        j["pr"] = rational_to_json(value);
        out << j.dump() << "\n";
    } else {
        out << value.str() << "\n";
    }
    return 0;
}

inline int cmd_word(const RunConfig& cfg, const std::string& spec, const std::string& word_text,
                    unsigned n, long long g_elt, std::ostream& out) {
    GroupPtr g = parse_group_spec(spec, cfg);
    Word w = parse_word(word_text);
    auto adm = check_admissible(w);
    if (!adm) {
        auto why = AdmissibleWord::why_not(w);
        throw InvalidSpec("word is not admissible: x" + std::to_string(why->generator) + ": " +
                          why->rule);
    }
    unsigned nn = std::max(n, w.arity());
    if (g_elt >= 0) {
        Elem e = checked_elem(g, g_elt);
        BigInt count = count_solutions(*adm, *g, e, nn, cfg.budget, cfg.jobs);
        Rational prob(count, big_pow(BigInt(g->order()), nn));
        if (cfg.json) {
            Json j;
            j["group"] = g->name();
            j["word"] = w.format();
            j["n"] = nn;
            j["g"] = e;
            j["count"] = count.str();
            j["pr"] = rational_to_json(prob);
            out << j.dump() << "\n";
        } else {
            out << count.str() << " solutions, Pr = " << prob.str() << "\n";
        }
        return 0;
    }
    FiberDistribution dist = fiber_distribution(*adm, *g, nn, cfg.budget, cfg.jobs);
    if (cfg.json) {
        Json j;
        j["group"] = g->name();
        j["word"] = w.format();
        j["n"] = nn;
        Json counts = Json::array();
        for (const BigInt& c : dist.counts) counts.push_back(c.str());
        j["counts"] = std::move(counts);
        j["max_deviation"] = rational_to_json(dist.max_deviation);
        j["coverage"] = rational_to_json(dist.coverage);
        out << j.dump() << "\n";
    } else {
        out << "image " << dist.image_size << "/" << g->order()
            << ", max deviation " << dist.max_deviation.str() << ", coverage "
            << dist.coverage.str() << "\n";
    }
    return 0;
}

inline int cmd_chartab(const RunConfig& cfg, const std::string& spec, std::ostream& out) {
    GroupPtr g = parse_group_spec(spec, cfg);
    CharacterTable t = character_table_cached(g, cfg.cache_dir);
    if (cfg.json) {
        out << character_table_to_json(t).dump() << "\n";
        return 0;
    }
    out << g->name() << ": " << t.k() << " classes\n";
    out << "class legend (index: size, representative element id, element order):\n";
    for (std::size_t i = 0; i < t.k(); ++i) {
        Elem rep = t.classes->representative(i);
        out << "  " << i << ": " << t.classes->classes[i].size() << ", " << static_cast<int>(rep)
            << ", " << g->element_order(rep) << "\n";
    }
    for (std::size_t r = 0; r < t.k(); ++r) {
        out << "chi" << r << " (deg " << t.degrees[r] << "):";
        for (std::size_t c = 0; c < t.k(); ++c) {
            Complex v = t.value(r, c);
            std::ostringstream cell;
            if (v.imag() == 0.0) {
                cell << v.real();
            } else {
                cell << v.real() << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
            }
            out << " " << cell.str();
        }
        out << "\n";
    }
    return 0;
}

inline int cmd_zeta(const RunConfig& cfg, const std::string& spec, const std::string& hspec,
                    const std::string& variant, unsigned n, long long g_elt, std::ostream& out) {
    GroupPtr g = parse_group_spec(spec, cfg);
    Elem e = g_elt < 0 ? 0 : checked_elem(g, g_elt);
    BigInt value;
    if (variant == "frobenius") {
        value = frobenius_zeta(g, e);
    } else {
        if (hspec.empty()) throw InvalidSpec("variant " + variant + " requires --h");
        Subgroup h = parse_subgroup_spec(g, hspec);
        if (variant == "tilde")
            value = zeta_tilde(g, h, e, true);
        else if (variant == "tilde2n")
            value = zeta_tilde_2n(g, h, e, n);
        else
            value = zeta_tilde_3(g, h, e);
    }
    if (cfg.json) {
        Json j;
        j["group"] = g->name();
        j["variant"] = variant;
        j["g"] = e;
        if (variant == "tilde2n") j["n"] = n;
        j["count"] = value.str();
        out << j.dump() << "\n";
    } else {
        out << value.str() << "\n";
    }
    return 0;
}

inline int cmd_isoclinic(const RunConfig& cfg, const std::string& spec_a, const std::string& spec_b,
                         std::ostream& out) {
    GroupPtr a = parse_group_spec(spec_a, cfg);
    GroupPtr b = parse_group_spec(spec_b, cfg);
    auto witness = find_isoclinism(a, b);
    if (cfg.json) {
        Json j;
        j["a"] = a->name();
        j["b"] = b->name();
        j["isoclinic"] = witness.has_value();
        if (witness) {
            j["phi"] = witness->phi;
            Json psi = Json::array();
            for (std::size_t x = 0; x < witness->psi.size(); ++x)
                if (witness->psi[x] >= 0) psi.push_back(Json::array({x, witness->psi[x]}));
            j["psi"] = std::move(psi);
        }
        out << j.dump() << "\n";
    } else {
        out << (witness ? "isoclinic" : "not isoclinic") << "\n";
    }
    return 0;
}

inline int cmd_verify(const RunConfig& cfg, const std::string& suite, std::size_t instances,
                      std::ostream& out, std::ostream& err) {
    ScanReport report;
    std::vector<GroupPtr> catalog;
    if (suite != "table") catalog = full_catalog(cfg.catalog_dir);
    if (suite == "table" || suite == "all") report.merge(verify_classification_table());
    if (suite == "ch2" || suite == "all") {
        report.merge(chapter2_scan(catalog, cfg.pr_options()));
        report.merge(prop_4_3_7_scan(catalog, 2, cfg.pr_options()));
    }
    if (suite == "bounds" || suite == "all")
        report.merge(bounds_catalog_scan(catalog, instances, 20100701, cfg.pr_options()));
    if (cfg.json) {
        out << report.to_json().dump() << "\n";
    } else {
        out << "applicable checks: " << report.applicable_count() << ", failures: "
            << report.failures() << "\n";
        for (const auto& e : report.entries)
            if (e.applicable && !e.holds)
                out << "FAIL " << e.group << " " << e.statement << " " << e.detail << "\n";
    }
    if (!report.ok()) {
        err << "verification failed\n";
        return 3;
    }
    return 0;
}

inline int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<GroupPtr> groups = load_file_catalog(cfg.catalog_dir);
    ScanReport report = chapter2_scan(groups, cfg.pr_options());
    if (cfg.json) {
        out << report.to_json().dump() << "\n";
    } else {
        out << "groups: " << groups.size() << ", applicable checks: " << report.applicable_count()
            << ", failures: " << report.failures() << "\n";
        for (const auto& e : report.entries)
            if (e.applicable && !e.holds)
                out << "FAIL " << e.group << " " << e.statement << " " << e.detail << "\n";
    }
    if (!report.ok()) {
        err << "scan failed\n";
        return 3;
    }
    return 0;
}

} // namespace cli

/// Runs one CLI invocation; output goes to `out`, diagnostics to `err`.
/// Exit codes: 0 ok, 1 computation error, 2 usage error, 3 verification
/// failure.
inline int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact commutativity-degree toolkit"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help"); // frees -h / --h for subgroup options
    RunConfig cfg;
    long long budget_arg = 1000000000;
    app.add_flag("--json", cfg.json, "emit a single JSON object");
    app.add_option("--jobs", cfg.jobs, "worker count")->check(CLI::PositiveNumber);
    app.add_option("--budget", budget_arg, "max tuple evaluations");
    app.add_option("--ordercap", cfg.order_cap, "maximum group order for constructions");
    app.add_option("--cache", cfg.cache_dir, "character table cache directory");

    std::string spec, spec_b, hspec, kspec = "whole", word_text, variant = "frobenius", suite = "all";
    std::string catalog_dir;
    long long g_elt = -1;
    unsigned n_param = 2;
    std::size_t instances = 500;

    auto* c_pr = app.add_subcommand("pr", "commutativity degree Pr(G) or Pr_g(G)");
    c_pr->add_option("spec", spec)->required();
    c_pr->add_option("-g", g_elt, "element id");

    auto* c_prhk = app.add_subcommand("prhk", "Pr_g(H,K) over a pair of subgroups");
    c_prhk->add_option("spec", spec)->required();
    c_prhk->add_option("--h", hspec)->required();
    c_prhk->add_option("--k", kspec);
    c_prhk->add_option("-g", g_elt);

    auto* c_word = app.add_subcommand("word", "admissible word fiber statistics");
    c_word->add_option("spec", spec)->required();
    c_word->add_option("-w", word_text)->required();
    c_word->add_option("-n", n_param, "tuple length");
    c_word->add_option("-g", g_elt);

    auto* c_chartab = app.add_subcommand("chartab", "irreducible character table");
    c_chartab->add_option("spec", spec)->required();

    auto* c_zeta = app.add_subcommand("zeta", "commutator-equation solution counts");
    c_zeta->add_option("spec", spec)->required();
    c_zeta->add_option("--h", hspec);
    c_zeta->add_option("-g", g_elt);
    c_zeta->add_option("-n", n_param);
    c_zeta->add_option("--variant", variant)
        ->check(CLI::IsMember({"frobenius", "tilde", "tilde2n", "tilde3"}));

    auto* c_iso = app.add_subcommand("isoclinic", "isoclinism witness search");
    c_iso->add_option("specA", spec)->required();
    c_iso->add_option("specB", spec_b)->required();

    auto* c_verify = app.add_subcommand("verify", "run the verification suites");
    c_verify->add_option("--suite", suite)->check(CLI::IsMember({"table", "ch2", "bounds", "all"}));
    c_verify->add_option("--instances", instances, "bounds sampling instances");
    c_verify->add_option("--catalog", catalog_dir, "catalog directory");

    auto* c_scan = app.add_subcommand("scan", "chapter-2 scan over a group-file directory");
    c_scan->add_option("--catalog", catalog_dir)->required();

    for (CLI::App* sc : {c_pr, c_prhk, c_word, c_chartab, c_zeta, c_iso, c_verify, c_scan})
        sc->set_help_flag("--help", "print help");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    cfg.budget = BigInt(budget_arg);
    if (cfg.budget < BigInt(10000)) {
        err << "usage error: budget must be at least 10^4\n";
        return 2;
    }
    if (!catalog_dir.empty()) cfg.catalog_dir = catalog_dir;

    try {
        if (*c_pr) return cli::cmd_pr(cfg, spec, g_elt, out);
        if (*c_prhk) return cli::cmd_prhk(cfg, spec, hspec, kspec, g_elt, out);
        if (*c_word) return cli::cmd_word(cfg, spec, word_text, n_param, g_elt, out);
        if (*c_chartab) return cli::cmd_chartab(cfg, spec, out);
        if (*c_zeta) return cli::cmd_zeta(cfg, spec, hspec, variant, n_param, g_elt, out);
        if (*c_iso) return cli::cmd_isoclinic(cfg, spec, spec_b, out);
        if (*c_verify) return cli::cmd_verify(cfg, suite, instances, out, err);
        if (*c_scan) return cli::cmd_scan(cfg, out, err);
        err << "usage error: no subcommand\n";
        return 2;
    } catch (const SearchBudgetExceeded& e) {
        err << "inconclusive: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cli_dispatch(args, std::cout, std::cerr);
}

} // namespace commdeg
