// Command-line front end. All mathematics lives in the library; this file
// only parses flags, wires up a VerifyConfig, and serializes results.
//
// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "surfcheck/checks.hpp"
#include "surfcheck/tseries.hpp"

namespace {

using nlohmann::ordered_json;
using namespace surfcheck;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Writes through a temporary file in the same directory, then renames, so a
/// crash never leaves a half-written report behind.
void atomic_write(const std::string& path, const std::string& text) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open output file: " + path);
        out << text;
        if (!out.flush()) throw ConfigError("write failed: " + path);
    }
    std::filesystem::rename(tmp, target);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(',', start);
        out.push_back(s.substr(start, pos == std::string::npos ? pos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

OcticParams parse_lambda(const std::string& text) {
    std::vector<std::string> parts = split_commas(text);
    if (parts.size() != 4)
        throw ConfigError("--lambda expects four comma-separated rationals, got '" + text + "'");
    std::array<Rat, 4> vals;
    for (size_t i = 0; i < 4; ++i) {
        try {
            vals[i] = Rat::from_string(parts[i]);
        } catch (const std::exception& e) {
            throw ConfigError("bad rational in --lambda: '" + parts[i] + "' (" + e.what() + ")");
        }
    }
    if (vals[3].is_zero()) throw ConfigError("lambda3 must be nonzero");
    try {
        return OcticParams(vals[0], vals[1], vals[2], vals[3]);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

/// "auto" derives the frame from lambda; an explicit a,b,c triple must
/// square back to (lambda1, lambda2, -lambda3).
void validate_frame(const std::string& text, const OcticParams& params) {
    if (text == "auto") {
        if (!TangentFrame::derive(params))
            throw ConfigError(
                "no rational square-root frame exists for the given lambda; "
                "pass --frame explicitly or choose lambda with square l1, l2, -l3");
        return;
    }
    std::vector<std::string> parts = split_commas(text);
    if (parts.size() != 3)
        throw ConfigError("--frame expects 'auto' or three comma-separated rationals");
    std::array<Rat, 3> mu;
    for (size_t i = 0; i < 3; ++i) {
        try {
            mu[i] = Rat::from_string(parts[i]);
        } catch (const std::exception& e) {
            throw ConfigError("bad rational in --frame: '" + parts[i] + "' (" + e.what() + ")");
        }
    }
    TangentFrame f{mu[0], mu[1], mu[2]};
    if (!f.consistent_with(params))
        throw ConfigError("frame (" + text + ") is not a square root frame for the given lambda");
}

// Shared flag bundle for the two verify subcommands. A JSON config file may
// supply any of these values; flags given on the command line win.
struct VerifyOpts {
    std::string lambda = "1,1,4,-9";
    std::string frame = "auto";
    uint32_t order = 12;
    uint64_t seed = 42;
    size_t planes = 15;
    int n_lines = 14;
    int truncation = 2;
    int divisor_degree = 5;
    bool reverse_inclusion = false;
    std::string config_path;
    std::string json_path;
    std::string markdown_path;
};

void add_common_flags(CLI::App* cmd, VerifyOpts& o, bool octic) {
    if (octic) {
        cmd->add_option("--lambda", o.lambda, "pencil coefficients l0,l1,l2,l3 (exact rationals)")
            ->capture_default_str();
        cmd->add_option("--frame", o.frame, "'auto' or an explicit sqrt frame m1,m2,m3")
            ->capture_default_str();
        cmd->add_option("--order", o.order, "series truncation order")->capture_default_str();
        cmd->add_flag("--reverse-inclusion", o.reverse_inclusion,
                      "also certify that the singular locus lies in the plane union");
    } else {
        cmd->add_option("--planes", o.planes, "number of planes in the arrangement")
            ->capture_default_str();
        cmd->add_option("--lines", o.n_lines, "line count n for the margin")->capture_default_str();
        cmd->add_option("--truncation", o.truncation, "truncation level k")->capture_default_str();
        cmd->add_option("--divisor-degree", o.divisor_degree, "companion divisor degree d")
            ->capture_default_str();
    }
    cmd->add_option("--seed", o.seed, "seed for all randomized draws (replays exactly)")
        ->capture_default_str();
    cmd->add_option("--config", o.config_path, "JSON config file mirroring these flags");
    cmd->add_option("--json", o.json_path, "write the report as JSON to this path");
    cmd->add_option("--markdown", o.markdown_path, "write the rendered report to this path");
}

/// Applies a config file underneath the flags: a key only takes effect when
/// the matching flag was not given on the command line.
void apply_config_file(const CLI::App* cmd, VerifyOpts& o) {
    if (o.config_path.empty()) return;
    std::ifstream in(o.config_path);
    if (!in) throw ConfigError("cannot read config file: " + o.config_path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    auto unset = [&](const char* flag) {
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        return opt == nullptr || opt->count() == 0;
    };
    try {
        if (doc.contains("lambda") && unset("--lambda")) {
            if (doc["lambda"].is_string()) {
                o.lambda = doc["lambda"].get<std::string>();
            } else {
                std::string joined;
                for (const auto& v : doc["lambda"]) {
                    if (!joined.empty()) joined += ",";
                    joined += v.get<std::string>();
                }
                o.lambda = joined;
            }
        }
        if (doc.contains("frame") && unset("--frame")) o.frame = doc["frame"].get<std::string>();
        if (doc.contains("order") && unset("--order")) o.order = doc["order"].get<uint32_t>();
        if (doc.contains("seed") && unset("--seed")) o.seed = doc["seed"].get<uint64_t>();
        if (doc.contains("plane_count") && unset("--planes"))
            o.planes = doc["plane_count"].get<size_t>();
        if (doc.contains("reverse_inclusion") && unset("--reverse-inclusion"))
            o.reverse_inclusion = doc["reverse_inclusion"].get<bool>();
        if (doc.contains("percolation")) {
            const auto& p = doc["percolation"];
            if (p.contains("n_lines") && unset("--lines")) o.n_lines = p["n_lines"].get<int>();
            if (p.contains("truncation") && unset("--truncation"))
                o.truncation = p["truncation"].get<int>();
            if (p.contains("divisor_degree") && unset("--divisor-degree"))
                o.divisor_degree = p["divisor_degree"].get<int>();
        }
        if (doc.contains("json_output") && unset("--json"))
            o.json_path = doc["json_output"].get<std::string>();
        if (doc.contains("markdown_output") && unset("--markdown"))
            o.markdown_path = doc["markdown_output"].get<std::string>();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("config file has a wrongly typed field: " + std::string(e.what()));
    }
}

int run_verify(const VerifyOpts& o, bool planes, bool octic) {
    VerifyConfig cfg;
    cfg.run_planes = planes;
    cfg.run_octic = octic;
    cfg.order = o.order;
    cfg.seed = o.seed;
    cfg.plane_count = o.planes;
    cfg.percolation = {o.n_lines, o.truncation, o.divisor_degree};
    cfg.reverse_inclusion = o.reverse_inclusion;
    if (octic) {
        cfg.params = parse_lambda(o.lambda);
        validate_frame(o.frame, cfg.params);
        if (cfg.order < 6 || cfg.order > 20)
            throw ConfigError("--order must lie in [6, 20], got " + std::to_string(cfg.order));
    }

    Report rep = verify_all(cfg);
    for (const auto& c : rep.checks) {
        std::cout << "[" << CheckResult::status_name(c.status) << "] " << c.id << " ("
                  << c.duration_ms << " ms)";
        if (!c.passed() && !c.notes.empty()) std::cout << "  " << c.notes;
        std::cout << "\n";
    }
    std::cout << "overall: " << (rep.overall ? "pass" : "fail") << "\n";
    std::cout << "fingerprint: " << rep.hash << "\n";

    std::string json_text = report_to_json(rep);
    if (!o.json_path.empty()) atomic_write(o.json_path, json_text);
    if (!o.markdown_path.empty()) atomic_write(o.markdown_path, report_json_to_markdown(json_text));
    return rep.overall ? 0 : 1;
}

template <class K>
ordered_json series_json(const TSeriesT<K>& s) {
    MPolyT<K> p = s.poly();
    std::vector<std::pair<Mono, K>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        uint32_t da = 0, db = 0;
        for (uint32_t e : a.first) da += e;
        for (uint32_t e : b.first) db += e;
        if (da != db) return da < db;
        return a.first < b.first;
    });
    ordered_json j;
    j["order"] = s.order();
    ordered_json arr = ordered_json::array();
    for (const auto& [m, c] : terms) {
        ordered_json t;
        t["exps"] = m;
        t["coef"] = c.to_string();
        arr.push_back(std::move(t));
    }
    j["terms"] = std::move(arr);
    return j;
}

int run_factor_vertex(const std::string& lambda_text, int vertex, uint32_t order,
                      const std::string& split, const std::string& out_path) {
    OcticParams params = parse_lambda(lambda_text);
    if (vertex < 0 || vertex > 3) throw ConfigError("--vertex must be 0..3");
    if (order < 6 || order > 20)
        throw ConfigError("--order must lie in [6, 20], got " + std::to_string(order));
    size_t split_var;
    if (split == "z")
        split_var = 2;
    else if (split == "x")
        split_var = 0;
    else
        throw ConfigError("--split must be 'z' or 'x'");

    MPoly chart = chart_at_vertex(build_octic(params, false), vertex);
    GPoly g = to_gauss(chart);
    ordered_json doc;
    doc["vertex"] = vertex;
    doc["order"] = order;
    doc["split_variable"] = split;
    doc["variables"] = {"x", "y", "z"};
    try {
        GQuarticSplit qs = factor_quartic_vertical(g, split_var, order);
        doc["sqrt_a"] = series_json(qs.sqrt_a);
        doc["delta"] = series_json(qs.delta);
        doc["q_plus"] = series_json(qs.q_factor(true));
        doc["q_minus"] = series_json(qs.q_factor(false));
        auto bp = branch_split(qs, true);
        auto bm = branch_split(qs, false);
        doc["psi_plus"] = series_json(bp.psi);
        doc["psi_minus"] = series_json(bm.psi);
    } catch (const SeriesError& e) {
        std::cerr << "factorization failed: " << e.what() << "\n";
        return 1;
    }
    std::string text = doc.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        atomic_write(out_path, text);
    return 0;
}

int run_report(const std::string& in_path, const std::string& out_path) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw ConfigError("cannot read report file: " + in_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::string md;
    try {
        md = report_json_to_markdown(text);
    } catch (const std::exception& e) {
        throw ConfigError("not a valid report document: " + std::string(e.what()));
    }
    if (out_path.empty())
        std::cout << md;
    else
        atomic_write(out_path, md);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of the quintic arrangement and the singular octic"};
    app.require_subcommand(1);

    VerifyOpts octic_opts;
    CLI::App* voct = app.add_subcommand("verify-octic", "run the octic check suite");
    add_common_flags(voct, octic_opts, true);

    VerifyOpts plane_opts;
    CLI::App* vpl = app.add_subcommand("verify-planes", "run the plane-arrangement check suite");
    add_common_flags(vpl, plane_opts, false);

    int pc_lines = 14, pc_trunc = 2, pc_deg = 5;
    CLI::App* perc = app.add_subcommand("percolation", "print the degree margin for (n, k, d)");
    perc->add_option("--lines", pc_lines, "line count n")->capture_default_str();
    perc->add_option("--truncation", pc_trunc, "truncation level k")->capture_default_str();
    perc->add_option("--divisor-degree", pc_deg, "companion divisor degree d")
        ->capture_default_str();

    std::string fv_lambda = "1,1,4,-9", fv_split = "z", fv_out;
    int fv_vertex = 0;
    uint32_t fv_order = 12;
    CLI::App* fv = app.add_subcommand("factor-vertex",
                                      "dump the quartic factorization at one vertex as JSON");
    fv->add_option("--lambda", fv_lambda, "pencil coefficients l0,l1,l2,l3")->capture_default_str();
    fv->add_option("--vertex", fv_vertex, "vertex index 0..3")->capture_default_str();
    fv->add_option("--order", fv_order, "series truncation order")->capture_default_str();
    fv->add_option("--split", fv_split, "vertical split variable, 'z' or 'x'")
        ->capture_default_str();
    fv->add_option("--output", fv_out, "output path (stdout when omitted)");

    std::string rp_in, rp_out;
    CLI::App* rp = app.add_subcommand("report", "render a JSON report as Markdown");
    rp->add_option("input", rp_in, "report JSON file")->required();
    rp->add_option("--output", rp_out, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (voct->parsed()) {
            apply_config_file(voct, octic_opts);
            return run_verify(octic_opts, false, true);
        }
        if (vpl->parsed()) {
            apply_config_file(vpl, plane_opts);
            return run_verify(plane_opts, true, false);
        }
        if (perc->parsed()) {
            auto [margin, certified] = non_percolation_margin({pc_lines, pc_trunc, pc_deg});
            std::cout << "margin: " << margin << "\n";
            if (certified)
                std::cout << "certified: the degree chain is contradictory, margin "
                          << margin << " > 0\n";
            else
                std::cout << "not certified: margin is not positive, no claim is made\n";
            return 0;
        }
        if (fv->parsed()) return run_factor_vertex(fv_lambda, fv_vertex, fv_order, fv_split, fv_out);
        if (rp->parsed()) return run_report(rp_in, rp_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
