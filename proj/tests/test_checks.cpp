#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfcheck/checks.hpp"

using namespace surfcheck;

namespace {

Arrangement coordinate_arrangement() {
    Arrangement arr;
    for (int i = 0; i < 4; ++i) {
        std::vector<Rat> c(4, Rat(0));
        c[static_cast<size_t>(i)] = Rat(1);
        arr.forms.emplace_back(std::move(c));
    }
    arr.provenance = "fixture";
    return arr;
}

}  // namespace

TEST_CASE("general position") {
    CHECK(check_general_position(coordinate_arrangement()).passed());
    Arrangement bad = coordinate_arrangement();
    bad.forms.emplace_back(std::vector<Rat>{Rat(1), Rat(1), Rat(1), Rat(0)});  // sum of first 3
    CheckResult r = check_general_position(bad);
    CHECK(!r.passed());
    CHECK(!r.witnesses.empty());
    CHECK(check_general_position(build_arrangement(15, 42)).passed());
}

TEST_CASE("triple point avoidance") {
    Arrangement arr = coordinate_arrangement();
    VarCtxPtr ctx = octic_context(false);
    // (z0+z1+z2+z3)^5 is 1 at every coordinate vertex
    MPoly good = poly_parse("z0 + z1 + z2 + z3", ctx).pow(5);
    CHECK(check_divisor_avoids_triple_points(good, arr).passed());
    // z0^5 vanishes at the triple point H1 n H2 n H3 ... no wait, at H0's
    // complementary vertices; it vanishes at (0:0:0:1) = H0 n H1 n H2
    CheckResult r = check_divisor_avoids_triple_points(poly_parse("z0^5", ctx), arr);
    CHECK(!r.passed());
    CHECK(!r.witnesses.empty());
}

TEST_CASE("smooth plane sections") {
    Arrangement arr = coordinate_arrangement();
    VarCtxPtr ctx = octic_context(false);
    MPoly fermat = poly_parse("z0^5 + z1^5 + z2^5 + z3^5", ctx);
    CHECK(check_quintic_sections(fermat, arr, 1).passed());
    // planted: the section on z0 = 0 is z1^2*z2^3 = 0, badly singular
    CheckResult r = check_quintic_sections(poly_parse("z1^2*z2^3 + z0^5", ctx), arr, 1);
    CHECK(!r.passed());
}

TEST_CASE("certified companion divisor") {
    Arrangement arr = build_arrangement(15, 42);
    MPoly q = certified_companion(arr, 5, 42);
    CHECK(q.total_degree() == 5);
    CHECK(check_divisor_avoids_triple_points(q, arr).passed());
    CHECK(check_quintic_sections(q, arr, 42).passed());
    // replay
    CHECK(certified_companion(arr, 5, 42) == q);
}

TEST_CASE("percolation margin arithmetic") {
    CHECK(non_percolation_margin({14, 2, 5}) == std::pair<int, bool>{1, true});
    CHECK(non_percolation_margin({5, 2, 6}) == std::pair<int, bool>{-10, false});
    CHECK(non_percolation_margin({3, 0, 1}) == std::pair<int, bool>{0, false});
    // monotonicity
    for (int n = 4; n < 20; ++n) {
        PercolationParams p{n, 2, 5};
        PercolationParams p2{n + 1, 2, 5};
        CHECK(non_percolation_margin(p2).first == non_percolation_margin(p).first + 1);
        PercolationParams p3{n, 2, 6};
        CHECK(non_percolation_margin(p3).first == non_percolation_margin(p).first - 2);
    }
}

TEST_CASE("restriction squares and singular containment") {
    CHECK(check_restriction_square().passed());
    CHECK(check_singular_containment().passed());
}

TEST_CASE("octic mutation catalog is detected") {
    // Flipping any catalogued sign in the octic must break the restriction
    // squares or the tangent-cone closed form; this is the same pair of
    // identities the named checks certify.
    OcticParams d = OcticParams::defaults();
    VarCtxPtr sctx = octic_context(true);
    MPoly qs = build_octic(d, true);
    std::array<size_t, 4> zvar;
    for (int i = 0; i < 4; ++i)
        zvar[static_cast<size_t>(i)] =
            static_cast<size_t>(sctx->index_of("z" + std::to_string(i)));
    VarCtxPtr cctx = chart_context(true);
    std::vector<size_t> chart_vars = {static_cast<size_t>(cctx->index_of("x")),
                                      static_cast<size_t>(cctx->index_of("y")),
                                      static_cast<size_t>(cctx->index_of("z"))};
    MPoly closed(cctx);
    {
        MPoly x = MPoly::variable(cctx, chart_vars[0]);
        MPoly y = MPoly::variable(cctx, chart_vars[1]);
        MPoly z = MPoly::variable(cctx, chart_vars[2]);
        MPoly L1 = MPoly::variable(cctx, static_cast<size_t>(cctx->index_of("l1")));
        MPoly L2 = MPoly::variable(cctx, static_cast<size_t>(cctx->index_of("l2")));
        MPoly L3 = MPoly::variable(cctx, static_cast<size_t>(cctx->index_of("l3")));
        closed = (L1 * x * x + L2 * y * y + L3 * z * z).pow(2) - L1 * L2 * x * x * y * y * Rat(4);
    }
    auto detected = [&](const MPoly& mutated) {
        for (int j = 0; j < 4; ++j) {
            MPoly restricted = mutated.set_var(zvar[static_cast<size_t>(j)], Rat(0));
            MPoly cj = double_curve(d, j, true).quartic.rename(sctx);
            if (restricted != cj * cj) return true;
        }
        for (int j = 0; j < 4; ++j) {
            MPoly deg4 = chart_at_vertex(mutated, j).homogeneous_part(4, chart_vars);
            MPoly want = (j == 0) ? closed
                                  : chart_at_vertex(qs, j).homogeneous_part(4, chart_vars);
            if (deg4 != want) return true;
        }
        return false;
    };
    CHECK(!detected(qs));  // the unmutated octic is clean
    // fixed catalog: the 10 largest grlex terms whose monomial misses some
    // coordinate (so the flip is visible on at least one plane)
    std::vector<std::pair<Mono, Rat>> catalog;
    for (auto it = qs.terms().rbegin(); it != qs.terms().rend() && catalog.size() < 10; ++it) {
        bool misses = false;
        for (size_t v : zvar) misses = misses || (it->first[v] == 0);
        if (misses) catalog.emplace_back(it->first, it->second);
    }
    REQUIRE(catalog.size() == 10);
    for (const auto& [m, c] : catalog) {
        MPoly mutated = qs - MPoly::monomial(sctx, m, c + c);  // flips the sign of one term
        CHECK(detected(mutated));
    }
}

TEST_CASE("double curve structure at all four planes") {
    OcticParams d = OcticParams::defaults();
    for (int j = 0; j < 4; ++j) {
        CheckResult r = check_double_curve_structure(d, j, 1);
        CHECK(r.passed());
    }
    OcticParams alt = OcticParams::alternate();
    for (int j = 0; j < 4; ++j) CHECK(check_double_curve_structure(alt, j, 1).passed());
}

TEST_CASE("node classification rejects degenerate lowest forms") {
    // a repeated tangent line has vanishing discriminant; the node test in
    // check_double_curve_structure relies on exactly this classification
    VarCtxPtr c = make_context({"x", "y"});
    MPoly node = poly_parse("4*y^2 - x^2", c);     // two distinct lines
    MPoly tacnode = poly_parse("y^2", c);          // repeated line
    auto disc = [&](const MPoly& f) {
        Rat a = f.coeff(Mono{2, 0}), b = f.coeff(Mono{1, 1}), cc = f.coeff(Mono{0, 2});
        return b * b - Rat(4) * a * cc;
    };
    CHECK(disc(node) != Rat(0));
    CHECK(disc(tacnode) == Rat(0));
}

TEST_CASE("pinch point bookkeeping") {
    OcticParams d = OcticParams::defaults();
    PinchReport rep = count_pinch_points(d, 1);
    REQUIRE(rep.curves.size() == 4);
    int total = 0;
    for (const auto& c : rep.curves) {
        CHECK(c.eliminant_degree == 24);  // Bezout 4*6
        CHECK(c.node_count == 3);
        CHECK(c.pinch_count == 12);
        CHECK(c.distinct_common_zeros == c.node_count + c.pinch_count);
        total += c.pinch_count;
    }
    CHECK(total == 48);
    CHECK(rep.total_pinch == 48);
    CHECK(check_pinch_points(d, 1).passed());
}

TEST_CASE("vertex structure at all four vertices") {
    OcticParams d = OcticParams::defaults();
    for (int j = 0; j < 4; ++j) {
        CheckResult r = check_vertex_structure(d, j, 12);
        CHECK(r.passed());
        if (!r.passed()) MESSAGE(r.id, ": ", r.notes);
    }
    // conclusions are chart independent: the alternate specialization
    // permutes which vertices need complex frames, yet every vertex passes
    OcticParams alt = OcticParams::alternate();
    for (int j = 0; j < 4; ++j) CHECK(check_vertex_structure(alt, j, 10).passed());
}

TEST_CASE("reverse inclusion of the singular locus") {
    CheckResult r = check_reverse_inclusion(OcticParams::defaults());
    CHECK(r.passed());
}

TEST_CASE("pencil vertex avoidance") {
    OcticParams d = OcticParams::defaults();
    VarCtxPtr ctx = octic_context(false);
    CHECK(check_pencil_vertices(d, poly_parse("z0^8 + z1^8 + z2^8 + z3^8", ctx)).passed());
    CheckResult r = check_pencil_vertices(d, poly_parse("z1^8 + z2^8 + z3^8", ctx));
    CHECK(!r.passed());
    CHECK(!r.witnesses.empty());
}

TEST_CASE("orchestration is deterministic") {
    VerifyConfig cfg;
    cfg.run_planes = false;
    cfg.order = 8;
    Report a = verify_all(cfg);
    Report b = verify_all(cfg);
    CHECK(a.overall);
    CHECK(a.hash == b.hash);
    // the serialized reports agree except for the timing fields
    REQUIRE(a.checks.size() == b.checks.size());
    for (size_t i = 0; i < a.checks.size(); ++i) {
        CHECK(a.checks[i].id == b.checks[i].id);
        CHECK(a.checks[i].status == b.checks[i].status);
        CHECK(a.checks[i].witnesses == b.checks[i].witnesses);
        CHECK(a.checks[i].notes == b.checks[i].notes);
    }
    // flipping the config changes the hash
    VerifyConfig cfg2 = cfg;
    cfg2.seed = 43;
    CHECK(verify_all(cfg2).hash != a.hash);
}

TEST_CASE("full default suite passes") {
    VerifyConfig cfg;
    cfg.order = 8;
    Report rep = verify_all(cfg);
    CHECK(rep.overall);
    for (const auto& c : rep.checks) {
        CHECK(c.status != CheckResult::Status::fail);
        if (c.status == CheckResult::Status::fail) MESSAGE(c.id, ": ", c.notes);
    }
    // every check id is unique
    std::vector<std::string> ids;
    for (const auto& c : rep.checks) ids.push_back(c.id);
    std::sort(ids.begin(), ids.end());
    CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
}

TEST_CASE("report serialization") {
    VerifyConfig cfg;
    cfg.run_octic = false;
    Report rep = verify_all(cfg);
    std::string json = report_to_json(rep);
    CHECK(json.find("\"overall\": \"" + std::string(rep.overall ? "pass" : "fail") + "\"") !=
          std::string::npos);
    CHECK(json.find(rep.hash) != std::string::npos);
    std::string md = report_json_to_markdown(json);
    CHECK(md.find("# Verification report") != std::string::npos);
    CHECK(md.find(rep.hash) != std::string::npos);
    CHECK(md.find("planes.percolation_margin") != std::string::npos);
}
