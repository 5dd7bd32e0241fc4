#include <json.hpp>

#include "surfcheck/checks.hpp"

namespace surfcheck {

using nlohmann::json;
using nlohmann::ordered_json;

uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {

CheckResult skipped(const std::string& id, const std::string& reason) {
    CheckResult r;
    r.id = id;
    r.status = CheckResult::Status::skipped;
    r.notes = reason;
    return r;
}

ordered_json config_json(const VerifyConfig& c) {
    ordered_json j;
    j["lambda"] = {c.params.lambda0.to_string(), c.params.lambda1.to_string(),
                   c.params.lambda2.to_string(), c.params.lambda3.to_string()};
    j["order"] = c.order;
    j["seed"] = c.seed;
    j["plane_count"] = c.plane_count;
    j["percolation"] = {{"n_lines", c.percolation.n_lines},
                        {"truncation", c.percolation.truncation},
                        {"divisor_degree", c.percolation.divisor_degree}};
    j["run_planes"] = c.run_planes;
    j["run_octic"] = c.run_octic;
    j["reverse_inclusion"] = c.reverse_inclusion;
    return j;
}

ordered_json check_json(const CheckResult& c, bool with_duration) {
    ordered_json j;
    j["id"] = c.id;
    j["status"] = CheckResult::status_name(c.status);
    ordered_json w = ordered_json::array();
    for (const auto& [k, v] : c.witnesses) w.push_back({{"name", k}, {"value", v}});
    j["witnesses"] = std::move(w);
    j["notes"] = c.notes;
    if (with_duration) j["duration_ms"] = c.duration_ms;
    return j;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

}  // namespace

Report verify_all(const VerifyConfig& config) {
    Report rep;
    rep.config = config;
    auto& out = rep.checks;

    // Plane-arrangement suite. The later checks depend on the earlier ones:
    // triple points are only well defined for an arrangement in general
    // position, and the margin is only quoted for a certified divisor.
    if (config.run_planes) {
        Arrangement arr = build_arrangement(config.plane_count, config.seed);
        CheckResult gp = check_general_position(arr);
        bool gp_ok = gp.passed();
        out.push_back(std::move(gp));
        if (!gp_ok) {
            out.push_back(skipped("planes.triple_points", "arrangement not in general position"));
            out.push_back(skipped("planes.smooth_sections", "arrangement not in general position"));
            out.push_back(skipped("planes.percolation_margin", "no certified divisor"));
        } else {
            bool divisor_ok = true;
            try {
                MPoly divisor = certified_companion(
                    arr, static_cast<uint32_t>(config.percolation.divisor_degree), config.seed);
                out.push_back(check_divisor_avoids_triple_points(divisor, arr));
                out.push_back(check_quintic_sections(divisor, arr, config.seed));
            } catch (const std::exception& e) {
                divisor_ok = false;
                CheckResult r;
                r.id = "planes.triple_points";
                r.status = CheckResult::Status::fail;
                r.witnesses.emplace_back("error", e.what());
                out.push_back(std::move(r));
                out.push_back(skipped("planes.smooth_sections", "no certified divisor"));
            }
            if (divisor_ok) {
                CheckResult margin;
                margin.id = "planes.percolation_margin";
                auto [m, certified] = non_percolation_margin(config.percolation);
                margin.status = certified ? CheckResult::Status::pass : CheckResult::Status::fail;
                margin.witnesses.emplace_back("margin", std::to_string(m));
                margin.notes = "(n_lines - 3) - truncation * divisor_degree must be positive";
                out.push_back(std::move(margin));
            } else {
                out.push_back(skipped("planes.percolation_margin", "no certified divisor"));
            }
        }
    }

    // Octic suite. The symbolic identities come first; the per-curve and
    // per-vertex analyses assume them.
    if (config.run_octic) {
        CheckResult rs = check_restriction_square();
        bool rs_ok = rs.passed();
        out.push_back(std::move(rs));
        if (rs_ok) {
            out.push_back(check_singular_containment());
        } else {
            out.push_back(skipped("octic.singular_containment", "restriction square failed"));
        }
        bool curves_ok = true;
        for (int j = 0; j < 4; ++j) {
            if (!rs_ok) {
                out.push_back(skipped("octic.double_curve_structure.j" + std::to_string(j),
                                      "restriction square failed"));
                curves_ok = false;
                continue;
            }
            CheckResult c = check_double_curve_structure(config.params, j, config.seed);
            curves_ok = curves_ok && c.passed();
            out.push_back(std::move(c));
        }
        if (curves_ok && rs_ok) {
            out.push_back(check_pinch_points(config.params, config.seed));
        } else {
            out.push_back(skipped("octic.pinch_points", "double curve structure not established"));
        }
        for (int j = 0; j < 4; ++j) {
            if (!rs_ok) {
                out.push_back(skipped("octic.vertex_structure.p" + std::to_string(j),
                                      "restriction square failed"));
                continue;
            }
            out.push_back(check_vertex_structure(config.params, j, config.order));
        }
        if (config.reverse_inclusion) {
            if (rs_ok) {
                out.push_back(check_reverse_inclusion(config.params));
            } else {
                out.push_back(skipped("octic.reverse_inclusion", "restriction square failed"));
            }
        }
        // Pencil deformer: seeded draws until one avoids the vertices.
        bool pencil_done = false;
        for (uint64_t stream = 200; stream < 220 && !pencil_done; ++stream) {
            MPoly f = random_homogeneous(octic_context(false), 8, config.seed, stream);
            CheckResult c = check_pencil_vertices(config.params, f);
            if (c.passed() || stream == 219) {
                out.push_back(std::move(c));
                pencil_done = true;
            }
        }
    }

    rep.overall = !rep.checks.empty();
    for (const auto& c : rep.checks)
        if (!c.passed()) rep.overall = false;

    // Hash of the canonical body with durations excluded, so reruns of the
    // same configuration produce the same fingerprint.
    ordered_json body;
    body["config"] = config_json(config);
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) checks.push_back(check_json(c, false));
    body["checks"] = std::move(checks);
    body["overall"] = rep.overall ? "pass" : "fail";
    rep.hash = hex64(fnv1a64(body.dump()));
    return rep;
}

std::string report_to_json(const Report& report) {
    ordered_json doc;
    doc["config"] = config_json(report.config);
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) checks.push_back(check_json(c, true));
    doc["checks"] = std::move(checks);
    doc["overall"] = report.overall ? "pass" : "fail";
    doc["hash"] = report.hash;
    return doc.dump(2) + "\n";
}

std::string report_json_to_markdown(const std::string& json_text) {
    json doc = json::parse(json_text);
    std::string md = "# Verification report\n\n";
    md += "Overall: **" + doc["overall"].get<std::string>() + "**  \n";
    md += "Fingerprint: `" + doc["hash"].get<std::string>() + "`\n\n";

    const auto& cfg = doc["config"];
    md += "## Configuration\n\n";
    md += "- lambda: (";
    for (size_t i = 0; i < cfg["lambda"].size(); ++i) {
        if (i) md += ", ";
        md += cfg["lambda"][i].get<std::string>();
    }
    md += ")\n";
    md += "- series order: " + cfg["order"].dump() + "\n";
    md += "- seed: " + cfg["seed"].dump() + "\n";
    md += "- planes: " + cfg["plane_count"].dump() + "\n";
    md += "- percolation: n_lines " + cfg["percolation"]["n_lines"].dump() + ", truncation " +
          cfg["percolation"]["truncation"].dump() + ", divisor degree " +
          cfg["percolation"]["divisor_degree"].dump() + "\n\n";

    md += "## Checks\n\n";
    md += "| check | status | time (ms) |\n|---|---|---|\n";
    for (const auto& c : doc["checks"]) {
        md += "| " + c["id"].get<std::string>() + " | " + c["status"].get<std::string>() + " | " +
              (c.contains("duration_ms") ? c["duration_ms"].dump() : "-") + " |\n";
    }
    md += "\n";

    for (const auto& c : doc["checks"]) {
        std::string notes = c["notes"].get<std::string>();
        const auto& wit = c["witnesses"];
        if (notes.empty() && wit.empty()) continue;
        md += "### " + c["id"].get<std::string>() + "\n\n";
        if (!notes.empty()) md += notes + "\n\n";
        for (const auto& w : wit) {
            // Witness polynomials are shown up to 40 terms; the JSON report
            // carries the full text.
            std::string v = w["value"].get<std::string>();
            int terms = 1;
            size_t cut = std::string::npos;
            for (size_t i = 1; i + 2 < v.size(); ++i) {
                if (v[i] == ' ' && (v[i + 1] == '+' || v[i + 1] == '-') && v[i + 2] == ' ') {
                    ++terms;
                    if (terms > 40) {
                        cut = i;
                        break;
                    }
                }
            }
            if (cut != std::string::npos) v = v.substr(0, cut) + " ... (see the JSON report)";
            md += "- " + w["name"].get<std::string>() + ": `" + v + "`\n";
        }
        md += "\n";
    }
    return md;
}

}  // namespace surfcheck
