#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfcheck/models.hpp"
#include "surfcheck/rat.hpp"

using namespace surfcheck;

TEST_CASE("canonical form") {
    Rat half(BigInt(2), BigInt(4));
    CHECK(half.num().to_string() == "1");
    CHECK(half.den().to_string() == "2");
    Rat negthird(BigInt(2), BigInt(-6));
    CHECK(negthird.to_string() == "-1/3");
    CHECK(!negthird.den().is_negative());
    Rat zero(BigInt(0), BigInt(17));
    CHECK(zero.is_zero());
    CHECK(zero.den().is_one());
    CHECK_THROWS(Rat(BigInt(1), BigInt(0)));
}

TEST_CASE("parsing") {
    CHECK(Rat::from_string("3/2").to_string() == "3/2");
    CHECK(Rat::from_string("-9").to_string() == "-9");
    CHECK(Rat::from_string("4/6").to_string() == "2/3");
    CHECK(Rat::from_string("-10/4") == Rat(BigInt(-5), BigInt(2)));
    CHECK_THROWS(Rat::from_string("1.5"));
    CHECK_THROWS(Rat::from_string("1/0"));
    CHECK_THROWS(Rat::from_string(""));
    CHECK_THROWS(Rat::from_string("2/"));
}

TEST_CASE("field arithmetic") {
    Rat a(BigInt(1), BigInt(2)), b(BigInt(1), BigInt(3));
    CHECK((a + b).to_string() == "5/6");
    CHECK((a - b).to_string() == "1/6");
    CHECK((a * b).to_string() == "1/6");
    CHECK((a / b).to_string() == "3/2");
    CHECK((-a).to_string() == "-1/2");
    CHECK(a.inverse().to_string() == "2");
    CHECK_THROWS(Rat(0).inverse());
    CHECK_THROWS(a / Rat(0));
    // distributivity on seeded values
    SeededRng rng(11, 0);
    for (int i = 0; i < 50; ++i) {
        Rat x(BigInt(rng.next_int(-50, 50)), BigInt(rng.next_int(1, 50)));
        Rat y(BigInt(rng.next_int(-50, 50)), BigInt(rng.next_int(1, 50)));
        Rat z(BigInt(rng.next_int(-50, 50)), BigInt(rng.next_int(1, 50)));
        CHECK(x * (y + z) == x * y + x * z);
        if (!x.is_zero()) CHECK(x * x.inverse() == Rat(1));
    }
}

TEST_CASE("ordering") {
    CHECK(Rat(BigInt(1), BigInt(3)) < Rat(BigInt(1), BigInt(2)));
    CHECK(Rat(-1) < Rat(BigInt(-1), BigInt(2)));
    CHECK(Rat(BigInt(7), BigInt(7)) == Rat(1));
}

TEST_CASE("exact square root") {
    CHECK(Rat(BigInt(4), BigInt(9)).sqrt().value() == Rat(BigInt(2), BigInt(3)));
    CHECK(Rat(0).sqrt().value() == Rat(0));
    CHECK(Rat(5184).sqrt().value() == Rat(72));
    CHECK(!Rat(2).sqrt().has_value());
    CHECK(!Rat(-4).sqrt().has_value());
    CHECK(!Rat(BigInt(1), BigInt(2)).sqrt().has_value());
}

TEST_CASE("gaussian rationals") {
    GaussRat i = GaussRat::i();
    CHECK((i * i) == GaussRat(-1));
    GaussRat z(Rat(1), Rat(1));
    CHECK((z * z.conj()) == GaussRat(2));
    CHECK(z.norm() == Rat(2));
    CHECK(z.inverse() == GaussRat(Rat(BigInt(1), BigInt(2)), Rat(BigInt(-1), BigInt(2))));
    CHECK((z * z.inverse()).is_one());
    CHECK((z / z).is_one());
    CHECK_THROWS(GaussRat().inverse());
    CHECK(GaussRat(Rat(3), Rat(-4)).conj() == GaussRat(Rat(3), Rat(4)));
}

TEST_CASE("gaussian square roots") {
    CHECK(GaussRat(-1).sqrt().value() == GaussRat::i());
    CHECK(GaussRat(Rat(0), Rat(2)).sqrt().value() == GaussRat(Rat(1), Rat(1)));
    CHECK(GaussRat(9).sqrt().value() == GaussRat(3));
    CHECK(GaussRat(-9).sqrt().value() == GaussRat(Rat(0), Rat(3)));
    CHECK(!GaussRat(2).sqrt().has_value());
    // sqrt squares back for seeded gaussians
    SeededRng rng(13, 2);
    for (int i2 = 0; i2 < 50; ++i2) {
        GaussRat w(Rat(BigInt(rng.next_int(-20, 20)), BigInt(rng.next_int(1, 9))),
                   Rat(BigInt(rng.next_int(-20, 20)), BigInt(rng.next_int(1, 9))));
        auto r = (w * w).sqrt();
        REQUIRE(r.has_value());
        CHECK((*r == w || *r == -w));
    }
}

TEST_CASE("printing") {
    CHECK(GaussRat::i().to_string() == "i");
    CHECK((-GaussRat::i()).to_string() == "-i");
    CHECK(GaussRat(Rat(0), Rat(2)).to_string() == "2*i");
    CHECK(GaussRat(Rat(1), Rat(2)).to_string() == "(1+2*i)");
    CHECK(GaussRat(Rat(1), Rat(-1)).to_string() == "(1-i)");
    CHECK(GaussRat(7).to_string() == "7");
}
