#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfcheck/models.hpp"
#include "surfcheck/tseries.hpp"

using namespace surfcheck;

namespace {

VarCtxPtr xy() { return make_context({"x", "y"}); }
VarCtxPtr xyz() { return make_context({"x", "y", "z"}); }

TSeries ts(const char* text, const VarCtxPtr& ctx, uint32_t order) {
    return TSeries::from_poly(poly_parse(text, ctx), order);
}

MPoly rnd(const VarCtxPtr& ctx, SeededRng& rng, uint32_t maxdeg) {
    MPoly p(ctx);
    for (int t = 0; t < 6; ++t) {
        Mono m(ctx->arity(), 0);
        uint32_t budget = maxdeg;
        for (size_t v = 0; v < m.size(); ++v) {
            m[v] = static_cast<uint32_t>(rng.next_int(0, budget));
            budget -= m[v];
        }
        p += MPoly::monomial(ctx, m, Rat(rng.next_int(-9, 9)));
    }
    return p;
}

}  // namespace

TEST_CASE("truncation on construction") {
    VarCtxPtr c = xy();
    TSeries s = ts("x + x^5", c, 5);
    CHECK(s == ts("x", c, 5));
    CHECK(TSeries::from_poly(MPoly::zero(c), 4).is_zero());
    CHECK(s.order() == 5);
    CHECK(s.valuation() == 1);
    TSeries q = ts("x^2 + x^3 + x^7", c, 6);
    CHECK(q.poly() == poly_parse("x^2 + x^3", c));
}

TEST_CASE("arithmetic") {
    VarCtxPtr c = xy();
    CHECK(ts("1 + x", c, 4) * ts("1 - x", c, 4) == ts("1 - x^2", c, 4));
    CHECK((ts("x", c, 4) * TSeries::from_poly(MPoly::zero(c), 4)).is_zero());
    TSeries a = ts("1 + x + y^2", c, 5), b = ts("2 - y", c, 5), d = ts("x - 3*y", c, 5);
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    CHECK_THROWS(a + ts("x", c, 4));  // order mismatch
}

TEST_CASE("inverse") {
    VarCtxPtr c = xy();
    TSeries geom = ts("1 - x", c, 5).inverse();
    CHECK(geom == ts("1 + x + x^2 + x^3 + x^4", c, 5));
    CHECK(ts("1/2", c, 3).inverse() == ts("2", c, 3));
    CHECK_THROWS(ts("x", c, 3).inverse());
    SeededRng rng(41, 0);
    for (int i = 0; i < 50; ++i) {
        MPoly p = rnd(c, rng, 3);
        MPoly u = p - MPoly::constant(c, p.constant_value()) + MPoly::constant(c, Rat(rng.next_int(1, 9)));
        TSeries s = TSeries::from_poly(u, 7);
        CHECK(s * s.inverse() == ts("1", c, 7));
    }
}

TEST_CASE("unit square root") {
    VarCtxPtr c = xy();
    CHECK(ts("1", c, 5).sqrt_unit() == ts("1", c, 5));
    CHECK(ts("1 + 2*x + x^2", c, 5).sqrt_unit() == ts("1 + x", c, 5));
    CHECK_THROWS(ts("x", c, 5).sqrt_unit());       // not a unit
    CHECK_THROWS(ts("2 + x", c, 5).sqrt_unit());   // constant not a rational square
    SeededRng rng(42, 0);
    for (int i = 0; i < 50; ++i) {
        MPoly p = rnd(c, rng, 3);
        MPoly u = p - MPoly::constant(c, p.constant_value()) + MPoly::constant(c, Rat(rng.next_int(1, 9)));
        TSeries s = TSeries::from_poly(u, 7);
        TSeries sq = s * s;
        TSeries r = sq.sqrt_unit();
        CHECK(r * r == sq);
    }
}

TEST_CASE("graded square root") {
    VarCtxPtr c = xy();
    TSeries s = ts("x^2 + 2*x^3 + x^4", c, 6);
    CHECK(s.sqrt_graded().value() == ts("x + x^2", c, 5));
    int failing = -1;
    CHECK(!ts("x^2 + y^2", c, 6).sqrt_graded(&failing).has_value());
    CHECK(failing == 2);  // already the lowest form is not a square of one line
    CHECK_THROWS(TSeries::from_poly(MPoly::zero(c), 4).sqrt_graded());
    // squares with linear lowest form recover +-s with positive lead
    SeededRng rng(43, 0);
    int done = 0;
    while (done < 50) {
        MPoly p = rnd(c, rng, 3);
        MPoly lin = p.homogeneous_part(1);
        if (lin.is_zero()) continue;
        MPoly f = lin + p.homogeneous_part(2) + p.homogeneous_part(3);
        TSeries sF = TSeries::from_poly(f, 7);
        auto r = (sF * sF).sqrt_graded();
        REQUIRE(r.has_value());
        CHECK((*r == sF.truncate(r->order()) || *r == (-sF).truncate(r->order())));
        ++done;
    }
}

TEST_CASE("order monotonicity") {
    VarCtxPtr c = xy();
    SeededRng rng(44, 0);
    for (int i = 0; i < 50; ++i) {
        MPoly p = rnd(c, rng, 4), q = rnd(c, rng, 4);
        TSeries a8 = TSeries::from_poly(p, 8), b8 = TSeries::from_poly(q, 8);
        TSeries a5 = TSeries::from_poly(p, 5), b5 = TSeries::from_poly(q, 5);
        CHECK((a8 * b8).truncate(5) == a5 * b5);
        CHECK((a8 + b8).truncate(5) == a5 + b5);
    }
    MPoly u = poly_parse("4 + x + y^2", c);
    CHECK(TSeries::from_poly(u, 9).sqrt_unit().truncate(5) == TSeries::from_poly(u, 5).sqrt_unit());
    CHECK(TSeries::from_poly(u, 9).inverse().truncate(5) == TSeries::from_poly(u, 5).inverse());
}

TEST_CASE("monomial division and multiplication") {
    VarCtxPtr c = xy();
    TSeries s = ts("x^2*y + x^3*y", c, 6);
    TSeries q = s.divide_monomial(Mono{2, 1}).value();
    CHECK(q == ts("1 + x", c, 3));
    CHECK(!ts("x + y", c, 4).divide_monomial(Mono{1, 0}).has_value());
    CHECK(q.mul_monomial(Mono{2, 1}, Rat(1)) == s);
}

TEST_CASE("quartic split on a constructed example") {
    VarCtxPtr c3 = xyz();
    MPoly q = poly_parse("z^4 - x^2*z^2 - y^2*z^2 + x^2*y^2", c3);
    QuarticSplit split = factor_quartic_vertical(q, 2, 8);
    CHECK(split.delta == TSeries::from_poly(poly_parse("x^4 - 2*x^2*y^2 + y^4", c3), 8));
    TSeries qp = split.q_factor(true), qm = split.q_factor(false);
    TSeries zx = ts("z^2 - x^2", c3, qp.order()), zy = ts("z^2 - y^2", c3, qp.order());
    CHECK(((qp == zx && qm == zy) || (qp == zy && qm == zx)));
    CHECK(qp * qm == TSeries::from_poly(q, qp.order()));
    // delta invariant
    CHECK(split.delta == split.b * split.b - split.a * split.c * Rat(4));
    // branch extraction
    BranchSplit bs = branch_split(split, qp == zx);
    CHECK(bs.psi == ts("x", c3, bs.psi.order()));
    CHECK(bs.factor_minus == ts("z - x", c3, bs.factor_minus.order()));
    CHECK(bs.factor_plus == ts("z + x", c3, bs.factor_plus.order()));
}

TEST_CASE("quartic split rejects bad inputs") {
    VarCtxPtr c3 = xyz();
    CHECK_THROWS_AS(factor_quartic_vertical(poly_parse("z^3 + x", c3), 2, 8), SeriesError);
    CHECK_THROWS_AS(factor_quartic_vertical(poly_parse("z^4 + z^3 + x^2", c3), 2, 8), SeriesError);
}

TEST_CASE("quartic split recombines on seeded synthetic quartics") {
    VarCtxPtr c3 = xyz();
    SeededRng rng(45, 0);
    MPoly x2 = poly_parse("x^2", c3);
    for (int i = 0; i < 50; ++i) {
        // a unit leading series and two even branches with x^2 lowest terms
        MPoly a = poly_parse("1", c3) + rnd(c3, rng, 2).homogeneous_part(2, {0, 1}).set_var(2, Rat(0));
        MPoly ha = rnd(c3, rng, 4).homogeneous_part(4, {0, 1}).set_var(2, Rat(0));
        MPoly hb = rnd(c3, rng, 4).homogeneous_part(4, {0, 1}).set_var(2, Rat(0));
        MPoly A = x2 + ha, B = -x2 + hb;
        MPoly z2 = poly_parse("z^2", c3);
        MPoly q = a * (z2 - A) * (z2 - B);
        QuarticSplit split = factor_quartic_vertical(q, 2, 10);
        TSeries qp = split.q_factor(true), qm = split.q_factor(false);
        CHECK(qp * qm == TSeries::from_poly(q, qp.order()));
    }
}

TEST_CASE("curve substitution") {
    VarCtxPtr c3 = xyz();
    VarCtxPtr tc = make_context({"t"});
    TSeries s = ts("z - x", c3, 6);
    auto t = TSeries::from_poly(poly_parse("t", tc), 6);
    auto zero = TSeries::from_poly(MPoly::zero(tc), 6);
    CHECK(ts_substitute_curve(s, {t, zero, t}).is_zero());
    TSeries r = ts_substitute_curve(s, {t, zero, -t});
    CHECK(r == TSeries::from_poly(poly_parse("-2*t", tc), r.order()));
    CHECK_THROWS(ts_substitute_curve(s, {t, zero}));
}

TEST_CASE("reference chart series facts") {
    OcticParams d = OcticParams::defaults();
    MPoly chart = chart_at_vertex(build_octic(d, false), 0);
    CHECK(chart.min_degree() == 4);
    GPoly g = to_gauss(chart);
    GQuarticSplit split = factor_quartic_vertical(g, 2, 12);
    VarCtxPtr cc = chart_context(false);
    CHECK(split.sqrt_a.piece(0) == to_gauss(poly_parse("9", cc)));
    CHECK(split.sqrt_a.piece(2) == to_gauss(poly_parse("-4*x^2 + y^2", cc)));
    CHECK(split.a.inverse().piece(0) == to_gauss(poly_parse("1/81", cc)));
    CHECK(split.delta.valuation() == 4);
    CHECK(split.delta.piece(4) == to_gauss(poly_parse("5184*x^2*y^2", cc)));
    GBranchSplit bp = branch_split(split, true), bm = branch_split(split, false);
    GPoly l1 = bp.psi.piece(1), l2 = bm.psi.piece(1);
    GPoly e1 = to_gauss(poly_parse("1/3*x - 2/3*y", cc));
    GPoly e2 = to_gauss(poly_parse("1/3*x + 2/3*y", cc));
    CHECK(((l1 == e1 && l2 == e2) || (l1 == e2 && l2 == e1)));
    // x-split route
    GQuarticSplit xs = factor_quartic_vertical(g, 0, 12);
    CHECK(xs.delta.piece(4) == to_gauss(poly_parse("576*y^2*z^2", cc)));
    // four-branch recombination a*(z^2-psi1^2)(z^2-psi2^2) == Q
    uint32_t bo = bp.factor_minus.order();
    GSeries prod = split.a.truncate(bo) * bp.factor_minus.truncate(bo) * bp.factor_plus.truncate(bo) *
                   bm.factor_minus.truncate(bo) * bm.factor_plus.truncate(bo);
    CHECK(prod == GSeries::from_poly(g, bo));
}
