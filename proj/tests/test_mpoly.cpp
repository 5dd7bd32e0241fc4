#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfcheck/models.hpp"
#include "surfcheck/mpoly.hpp"

using namespace surfcheck;

namespace {

VarCtxPtr xy() { return make_context({"x", "y"}); }
VarCtxPtr xyz() { return make_context({"x", "y", "z"}); }

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

TEST_CASE("parse and print round trip") {
    VarCtxPtr c = xy();
    MPoly p = poly_parse("1/2*x^2 - y", c);
    CHECK(p.term_count() == 2);
    CHECK(p.to_string() == "1/2*x^2 - y");
    CHECK(poly_parse(p.to_string(), c) == p);

    CHECK(poly_parse("0*x + 3 - 3", c).is_zero());
    CHECK(poly_parse("0", c).to_string() == "0");
    CHECK(poly_parse("x*x*x", c).to_string() == "x^3");
    CHECK(poly_parse(" - x + 2*y ", c).to_string() == "-x + 2*y");
}

TEST_CASE("parse errors carry positions") {
    VarCtxPtr c = xy();
    CHECK_THROWS_AS(poly_parse("x^-1", c), ParseError);
    CHECK_THROWS_AS(poly_parse("q + 1", c), ParseError);
    CHECK_THROWS_AS(poly_parse("x +", c), ParseError);
    CHECK_THROWS_AS(poly_parse("1/0*x", c), ParseError);
    try {
        poly_parse("x + $", c);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("ring arithmetic") {
    VarCtxPtr c = xy();
    MPoly x = MPoly::variable(c, 0), y = MPoly::variable(c, 1);
    CHECK((x + y) * (x - y) == poly_parse("x^2 - y^2", c));
    CHECK((x * MPoly::zero(c)).is_zero());
    MPoly xp1 = x + MPoly::constant(c, Rat(1));
    CHECK(xp1.pow(3) == poly_parse("x^3 + 3*x^2 + 3*x + 1", c));
    CHECK(xp1.pow(0) == MPoly::constant(c, Rat(1)));
    CHECK_THROWS(x + MPoly::variable(xyz(), 0));
}

TEST_CASE("derivative") {
    VarCtxPtr c = xy();
    CHECK(poly_parse("x^2*y", c).derivative(0) == poly_parse("2*x*y", c));
    CHECK(poly_parse("5", c).derivative(0).is_zero());
    CHECK_THROWS(poly_parse("x", c).derivative(7));
    // Leibniz rule on seeded pairs
    SeededRng rng(31, 0);
    for (int i = 0; i < 50; ++i) {
        MPoly p = rnd(c, rng, 4), q = rnd(c, rng, 4);
        CHECK((p * q).derivative(0) == p * q.derivative(0) + q * p.derivative(0));
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    VarCtxPtr c = xyz();
    SeededRng rng(32, 0);
    for (int i = 0; i < 100; ++i) {
        MPoly p = rnd(c, rng, 3), q = rnd(c, rng, 3);
        std::vector<Rat> v = {Rat(BigInt(rng.next_int(-9, 9)), BigInt(rng.next_int(1, 5))),
                              Rat(BigInt(rng.next_int(-9, 9)), BigInt(rng.next_int(1, 5))),
                              Rat(BigInt(rng.next_int(-9, 9)), BigInt(rng.next_int(1, 5)))};
        CHECK((p * q).eval(v) == p.eval(v) * q.eval(v));
        CHECK((p + q).eval(v) == p.eval(v) + q.eval(v));
    }
}

TEST_CASE("substitution") {
    VarCtxPtr c = xy();
    MPoly p = poly_parse("x^2 + x*y", c);
    CHECK(p.set_var(1, Rat(0)) == poly_parse("x^2", c));
    MPoly x = MPoly::variable(c, 0), y = MPoly::variable(c, 1);
    // x -> x + y is a ring homomorphism
    SeededRng rng(33, 0);
    for (int i = 0; i < 25; ++i) {
        MPoly a = rnd(c, rng, 3), b = rnd(c, rng, 3);
        std::vector<MPoly> im = {x + y, y};
        CHECK((a * b).substitute(c, im) == a.substitute(c, im) * b.substitute(c, im));
    }
}

TEST_CASE("homogeneous parts") {
    VarCtxPtr c = xy();
    CHECK(poly_parse("x^2 + x^3", c).homogeneous_part(2) == poly_parse("x^2", c));
    CHECK(poly_parse("x^2 + x^3", c).homogeneous_part(5).is_zero());
    MPoly p = poly_parse("x^2*y + x*y + y", c);
    CHECK(p.homogeneous_part(1, {0}) == poly_parse("x*y", c));  // degree in x only
    CHECK(poly_parse("x^2 - y^2", c).is_homogeneous());
    CHECK(!poly_parse("x^2 - y", c).is_homogeneous());
}

TEST_CASE("exact division") {
    VarCtxPtr c = xy();
    CHECK(poly_parse("x^2 - y^2", c).exact_divide(poly_parse("x - y", c)).value() ==
          poly_parse("x + y", c));
    CHECK(!poly_parse("x", c).exact_divide(poly_parse("y", c)).has_value());
    CHECK_THROWS(poly_parse("x", c).exact_divide(MPoly::zero(c)));
    // divide-recover on seeded pairs
    SeededRng rng(34, 0);
    int done = 0;
    while (done < 50) {
        MPoly p = rnd(c, rng, 3), q = rnd(c, rng, 3);
        if (p.is_zero() || q.is_zero()) continue;
        CHECK((p * q).exact_divide(q).value() == p);
        ++done;
    }
}

TEST_CASE("homogeneous square root") {
    VarCtxPtr c = xy();
    MPoly s = poly_parse("x^2 + 2*x*y + y^2", c);
    CHECK(s.sqrt_homogeneous().value() == poly_parse("x + y", c));
    CHECK(!poly_parse("x^2 + y^2", c).sqrt_homogeneous().has_value());
    CHECK(!poly_parse("x^2 + x^3", c).sqrt_homogeneous().has_value());
    SeededRng rng(35, 0);
    for (int i = 0; i < 50; ++i) {
        MPoly f = rnd(c, rng, 2).homogeneous_part(2);
        if (f.is_zero()) continue;
        auto r = (f * f).sqrt_homogeneous();
        REQUIRE(r.has_value());
        CHECK((*r == f || *r == -f));
    }
}

TEST_CASE("determinant") {
    auto id = [](size_t n) {
        std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
        for (size_t i = 0; i < n; ++i) m[i][i] = Rat(1);
        return m;
    };
    CHECK(determinant(id(4)) == Rat(1));
    auto m = id(3);
    m[2] = m[0];  // repeated row
    CHECK(determinant(m) == Rat(0));
    // alternating under row swaps, seeded
    SeededRng rng(36, 0);
    for (int i = 0; i < 50; ++i) {
        std::vector<std::vector<Rat>> a(4, std::vector<Rat>(4));
        for (auto& row : a)
            for (auto& v : row) v = Rat(rng.next_int(-9, 9));
        Rat d = determinant(a);
        std::swap(a[1], a[3]);
        CHECK(determinant(a) == -d);
    }
    CHECK_THROWS(determinant(std::vector<std::vector<Rat>>{{Rat(1), Rat(2)}}));
}

TEST_CASE("resultant sign convention and common factors") {
    VarCtxPtr c = make_context({"x", "a", "b"});
    MPoly r = resultant(poly_parse("x - a", c), poly_parse("x - b", c), 0);
    CHECK(r == poly_parse("b - a", c));
    VarCtxPtr cx = xy();
    CHECK(resultant(poly_parse("x^2 - 1", cx), poly_parse("x - 1", cx), 0).is_zero());
    CHECK_THROWS(resultant(poly_parse("y", cx), poly_parse("x", cx), 0));
    // planted common factor vanishes; coprime pair does not
    SeededRng rng(37, 0);
    int done = 0;
    while (done < 50) {
        MPoly f = rnd(cx, rng, 2), g = rnd(cx, rng, 2), h = rnd(cx, rng, 2);
        if (f.degree_in(0) < 1 || g.degree_in(0) < 1 || h.degree_in(0) < 1) continue;
        CHECK(resultant(f * h, g * h, 0).is_zero());
        ++done;
    }
    MPoly f1 = poly_parse("x - y", cx), g1 = poly_parse("x - y - 1", cx);
    CHECK(!resultant(f1, g1, 0).is_zero());
}

TEST_CASE("distinct complex roots") {
    VarCtxPtr c = xy();
    MPoly p = poly_parse("x - 1", c).pow(2) * poly_parse("x + 2", c);
    CHECK(distinct_complex_root_count(p) == 2);
    CHECK(distinct_complex_root_count(poly_parse("x^5", c)) == 1);
    CHECK(distinct_complex_root_count(poly_parse("7", c)) == 0);
    CHECK_THROWS(distinct_complex_root_count(MPoly::zero(c)));
    CHECK_THROWS(distinct_complex_root_count(poly_parse("x*y", c)));
    CHECK(distinct_complex_root_count(poly_parse("x^2 + 1", c)) == 2);  // complex pair
}

TEST_CASE("dense gcd over the rationals") {
    // the Rat overload (primitive pseudo-remainder sequence) must agree
    // with the generic field Euclid, exercised through GaussRat
    SeededRng rng(38, 0);
    for (int i = 0; i < 50; ++i) {
        std::vector<Rat> a(7), b(6);
        for (auto& v : a) v = Rat(BigInt(rng.next_int(-20, 20)), BigInt(rng.next_int(1, 7)));
        for (auto& v : b) v = Rat(BigInt(rng.next_int(-20, 20)), BigInt(rng.next_int(1, 7)));
        std::vector<Rat> g = dense_gcd(a, b);
        std::vector<GaussRat> ga(a.begin(), a.end()), gb(b.begin(), b.end());
        std::vector<GaussRat> gg = dense_gcd(ga, gb);
        REQUIRE(g.size() == gg.size());
        for (size_t k = 0; k < g.size(); ++k) CHECK(GaussRat(g[k]) == gg[k]);
    }
    // planted factor recovered
    std::vector<Rat> f = {Rat(-1), Rat(0), Rat(1)};             // x^2 - 1
    std::vector<Rat> u = {Rat(2), Rat(1)}, v = {Rat(-3), Rat(1)};
    auto mul = [](const std::vector<Rat>& p, const std::vector<Rat>& q) {
        std::vector<Rat> r(p.size() + q.size() - 1, Rat(0));
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
        return r;
    };
    std::vector<Rat> g = dense_gcd(mul(f, u), mul(f, v));
    REQUIRE(g.size() == 3);
    CHECK(g[2] == Rat(1));
    CHECK(g[0] == Rat(-1));
    CHECK(g[1] == Rat(0));
}

TEST_CASE("grlex printing order") {
    VarCtxPtr c = xyz();
    MPoly p = poly_parse("z + y + x + x*y + z^2", c);
    // descending grlex: degree first, then earlier variables more significant
    CHECK(p.to_string() == "x*y + z^2 + x + y + z");
    CHECK(poly_parse("y^2 + x^2", c).leading_term().first == Mono{2, 0, 0});
}

TEST_CASE("gauss lifting") {
    VarCtxPtr c = xy();
    MPoly p = poly_parse("x^2 - y", c);
    GPoly g = to_gauss(p);
    CHECK(g.term_count() == 2);
    CHECK(g.coeff(Mono{2, 0}) == GaussRat(1));
    GPoly i = GPoly::constant(c, GaussRat::i());
    CHECK((i * i) == GPoly::constant(c, GaussRat(-1)));
}
