// onepw: validate, certify, search, bounds, export.
// Exit codes: 0 pass, 1 check failed, 2 usage or parse error, 3 hypothesis failure,
// 4 budget exhausted.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

#include "onepw/bounds.hpp"
#include "onepw/cache.hpp"
#include "onepw/drawing.hpp"
#include "onepw/export.hpp"
#include "onepw/extension.hpp"
#include "onepw/search.hpp"
#include "onepw/text_format.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace onepw;

namespace {

enum Exit { pass = 0, check_failed = 1, usage = 2, hypothesis = 3, budget = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RawDrawing load_drawing(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    return parse_drawing(in);
}

BipartiteGraph load_graph_spec(const std::string& spec, bool need_parts) {
    static const std::regex k_re(R"(K(\d+),(\d+))");
    std::smatch m;
    if (std::regex_match(spec, m, k_re)) return complete_bipartite(std::stoi(m[1]), std::stoi(m[2]));
    std::ifstream in(spec);
    if (!in) throw UsageError("cannot read graph " + spec + " (expected a file or K<x>,<y>)");
    GraphText t = parse_graph(in);
    if (t.parts) return {std::move(t.graph), std::move(*t.parts)};
    auto c = two_colouring(t.graph);
    if (!c) {
        if (need_parts) throw UsageError("graph " + spec + " is not bipartite");
        return {std::move(t.graph), Bipartition()};
    }
    return {std::move(t.graph), std::move(*c)};
}

std::string hex_id(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

void write_witness(const std::string& path, const OnePlanarDrawing& d) {
    if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_drawing(out, d);
}

int cmd_validate(const std::string& path) {
    RawDrawing raw = load_drawing(path);
    auto rep = validate_drawing(raw);
    if (rep.valid()) {
        OnePlanarDrawing d(raw);
        std::cout << "valid vertices=" << d.graph_vertex_count() << " edges=" << d.graph().edge_count()
                  << " crossings=" << d.crossing_count() << '\n';
        return pass;
    }
    std::cout << "invalid\n" << rep.text();
    return check_failed;
}

int cmd_certify(const std::string& path, std::string id) {
    RawDrawing raw = load_drawing(path);
    auto rep = validate_drawing(raw);
    if (!rep.valid()) {
        std::cout << "invalid\n" << rep.text();
        return check_failed;
    }
    if (id.empty()) id = fs::path(path).stem().string();
    Certificate c = certify(OnePlanarDrawing(raw), id);
    std::cout << c.text();
    if (!c.hypotheses_met()) return hypothesis;
    return c.passed() ? pass : check_failed;
}

int cmd_bounds(std::optional<long long> n, const std::vector<long long>& parts) {
    if (parts.empty() == !n.has_value()) throw UsageError("bounds needs exactly one of --n or --parts");
    std::ostringstream ss;
    if (n) {
        ss << "n=" << *n << "\nkarpov=" << karpov_bound(*n) << '\n';
    } else {
        const long long x = parts[0], y = parts[1], nn = x + y;
        ss << "n=" << nn << " x=" << x << " y=" << y << '\n'
           << "karpov=" << karpov_bound(nn) << '\n'
           << "czap=" << czap_bound(nn, x) << '\n'
           << "main=" << main_bound(nn, x) << '\n'
           << "removal=" << removal_lower_bound(x, y) << '\n';
    }
    std::cout << ss.str();
    return pass;
}

int cmd_export(const std::string& path, const std::string& format, bool bundle, const std::string& out_path) {
    RawDrawing raw = load_drawing(path);
    std::string text;
    if (bundle) {
        auto rep = validate_drawing(raw);
        if (!rep.valid()) {
            std::cerr << "bundle export needs a valid drawing\n" << rep.text();
            return check_failed;
        }
        auto b = extend(OnePlanarDrawing(raw));
        auto style = bundle_style(b);
        text = format == "dot" ? to_dot(b.dxw, style) : to_svg(b.dxw, style);
    } else {
        ExportStyle style;
        if (validate_drawing(raw).valid()) style = drawing_style(OnePlanarDrawing(raw));
        text = format == "dot" ? to_dot(raw.planarization, style) : to_svg(raw.planarization, style);
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << text;
        std::cout << "wrote " << out_path << '\n';
    }
    return pass;
}

struct SearchArgs {
    std::string kind;
    std::vector<std::string> operands;
    std::string rim = "X";
    std::string out;
    bool no_cache = false;
};

int cmd_search(const SearchArgs& a, const cli::RunConfig& cfg) {
    if (a.kind != "extremal" && a.operands.size() != 1) throw UsageError("search " + a.kind + " takes one graph");
    ResultCache cache(cfg.cache);
    const bool use_cache = !a.no_cache && !cfg.cache.empty();
    auto log = [&](const std::vector<std::string>& prov, const SearchStats* st) {
        if (cfg.verbosity <= 0) return;
        for (const auto& p : prov) std::cerr << "# " << p << '\n';
        if (st)
            std::cerr << "# nodes=" << st->nodes << " planarity_tests=" << st->planarity_tests
                      << " symmetry_pruned=" << st->symmetry_pruned << " decided_pruned=" << st->decided_pruned
                      << " group=" << st->group_order << " seconds=" << st->seconds << '\n';
    };
    auto report_hit = [&](const CacheRecord& r) {
        std::cout << r.verdict << '\n';
        if (!r.witness.empty()) std::cout << "witness=" << r.witness << '\n';
        if (cfg.verbosity > 0) std::cerr << "# cache hit " << r.timestamp << '\n';
    };

    if (a.kind == "extremal") {
        if (a.operands.size() != 2) throw UsageError("search extremal takes two part sizes");
        int x, y;
        try {
            x = std::stoi(a.operands[0]);
            y = std::stoi(a.operands[1]);
        } catch (const std::logic_error&) {
            throw UsageError("search extremal takes two integers");
        }
        const std::string key = "K" + std::to_string(x) + "," + std::to_string(y);
        if (use_cache)
            if (auto hit = cache.find(key, a.kind)) {
                report_hit(*hit);
                return pass;
            }
        auto r = extremal_search(x, y, cfg.budget);
        log(r.provenance, nullptr);
        std::string verdict = "max_edges=" + std::to_string(r.max_edges) + " exhausted=" + (r.exhausted ? "true" : "false");
        std::string witness;
        if (r.witness) {
            witness = a.out.empty() ? (fs::path(cfg.witness_dir) / ("extremal-" + key + ".drawing")).string() : a.out;
            write_witness(witness, *r.witness);
        }
        std::cout << verdict << '\n';
        if (!witness.empty()) std::cout << "witness=" << witness << '\n';
        if (!r.exhausted) return budget;
        if (use_cache) cache.append({key, a.kind, verdict, witness, cfg.budget.text(), utc_timestamp()});
        return pass;
    }

    const bool disc = a.kind == "disc";
    BipartiteGraph g = load_graph_spec(a.operands[0], disc);
    const bool has_parts = g.parts.vertex_count() == g.graph.vertex_count();
    std::vector<Vertex> rim;
    if (disc) {
        if (a.rim != "X" && a.rim != "Y") throw UsageError("--rim must be X or Y");
        rim = g.parts.members(a.rim == "X" ? Side::X : Side::Y);
    }
    const std::string key = cache_key(g.graph, has_parts ? &g.parts : nullptr, rim);
    if (use_cache)
        if (auto hit = cache.find(key, a.kind)) {
            report_hit(*hit);
            return pass;
        }
    SearchResult r;
    std::optional<Bipartition> parts;
    if (has_parts) parts = g.parts;
    if (disc) r = disc_min_crossings(g, a.rim == "X" ? Side::X : Side::Y, cfg.budget);
    else if (a.kind == "mincross") r = min_crossings_one_planar(g.graph, cfg.budget, parts);
    else r = decide_one_planar(g.graph, cfg.budget, parts);
    log(r.provenance, &r.stats);
    if (r.verdict == Verdict::unknown) {
        std::cout << "UNKNOWN\n";
        return budget;
    }
    std::string verdict = r.verdict == Verdict::yes ? "YES crossings=" + std::to_string(r.crossings) : "NO";
    std::string witness;
    if (r.drawing) {
        witness = a.out.empty() ? (fs::path(cfg.witness_dir) / (a.kind + "-" + hex_id(key) + ".drawing")).string() : a.out;
        write_witness(witness, *r.drawing);
    }
    std::cout << verdict << '\n';
    if (!witness.empty()) std::cout << "witness=" << witness << '\n';
    if (use_cache) cache.append({key, a.kind, verdict, witness, cfg.budget.text(), utc_timestamp()});
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bipartite 1-planar drawing workbench"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string config_path;
    std::map<std::string, std::string> flags;
    auto add_setting = [&](CLI::App* sub, const std::string& name, const std::string& key, const std::string& help) {
        sub->add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "config file (default ./onepw.conf)");
        add_setting(sub, "--max-crossings", "max_crossings", "largest pairing size tried");
        add_setting(sub, "--max-nodes", "max_nodes", "search node budget");
        add_setting(sub, "--time-limit", "time_limit", "seconds per search");
        add_setting(sub, "--symmetry", "symmetry", "on|off");
        add_setting(sub, "--screens", "screens", "on|off; off leaves every verdict to the search");
        add_setting(sub, "-j,--jobs", "jobs", "parallel search workers");
        add_setting(sub, "--cache", "cache", "result cache file");
        add_setting(sub, "--witness-dir", "witness_dir", "directory for witness drawings");
        sub->add_flag_function("-v,--verbose", [&flags](std::int64_t c) { flags["verbosity"] = std::to_string(c); },
                               "print provenance and statistics to stderr");
    };

    std::string path, id, format, out_path;
    bool bundle = false;

    auto* validate = app.add_subcommand("validate", "check a drawing file");
    validate->add_option("path", path)->required();

    auto* cert = app.add_subcommand("certify", "replay the edge-bound argument on a drawing");
    cert->add_option("path", path)->required();
    cert->add_option("--id", id, "drawing id in the certificate (default: file stem)");

    SearchArgs sa;
    auto* search = app.add_subcommand("search", "exhaustive searches");
    search->add_option("kind", sa.kind)->required()->check(CLI::IsMember({"1planar", "mincross", "disc", "extremal"}));
    search->add_option("operands", sa.operands, "graph file or K<x>,<y>; for extremal: x y")->required();
    search->add_option("--rim", sa.rim, "part drawn on the disc boundary (disc only)");
    search->add_option("-o,--out", sa.out, "witness output path");
    search->add_flag("--no-cache", sa.no_cache, "ignore and do not update the cache");
    add_common(search);

    std::optional<long long> n;
    std::vector<long long> parts;
    auto* bounds = app.add_subcommand("bounds", "closed-form bounds");
    bounds->add_option("--n", n, "vertex count");
    bounds->add_option("--parts", parts, "part sizes x y")->expected(2);

    auto* exp = app.add_subcommand("export", "DOT or SVG diagram");
    exp->add_option("path", path)->required();
    exp->add_option("-f,--format", format)->required()->check(CLI::IsMember({"dot", "svg"}));
    exp->add_flag("--bundle", bundle, "draw the extension with its added black edges dashed");
    exp->add_option("-o,--out", out_path, "output file (default stdout)");

    auto* config = app.add_subcommand("config", "print resolved settings and where each came from");
    add_common(config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        cli::RunConfig cfg;
        if (search->parsed() || config->parsed()) {
            if (config_path.empty()) {
                if (const char* p = std::getenv("ONEPW_CONFIG")) config_path = p;
            }
            cfg.load_file(config_path.empty() ? "onepw.conf" : config_path, !config_path.empty());
            cfg.load_env();
            for (const auto& [k, v] : flags) cfg.set(k, v, "flag:--" + k);
            cfg.budget.validate();
        }
        if (validate->parsed()) return cmd_validate(path);
        if (cert->parsed()) return cmd_certify(path, id);
        if (bounds->parsed()) return cmd_bounds(n, parts);
        if (exp->parsed()) return cmd_export(path, format, bundle, out_path);
        if (search->parsed()) return cmd_search(sa, cfg);
        if (config->parsed()) {
            for (const auto& k : cli::RunConfig::keys())
                std::cout << k << '=' << cfg.value(k) << " (" << cfg.origin.at(k) << ")\n";
            return pass;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return check_failed;
    }
    return usage;
}
