#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "surfcheck/bigint.hpp"
#include "surfcheck/models.hpp"

using namespace surfcheck;

TEST_CASE("construction and printing") {
    CHECK(BigInt().to_string() == "0");
    CHECK(BigInt(0).is_zero());
    CHECK(BigInt(1).is_one());
    CHECK(BigInt(-1).to_string() == "-1");
    CHECK(BigInt(123456789).to_string() == "123456789");
    CHECK(BigInt(-9223372036854775807LL).to_string() == "-9223372036854775807");
}

TEST_CASE("string round trip") {
    for (const char* s : {"0", "1", "-1", "42", "-9999999999999999999999999999",
                          "340282366920938463463374607431768211456"}) {
        CHECK(BigInt::from_string(s).to_string() == s);
    }
    CHECK(BigInt::from_string("+17").to_string() == "17");
    CHECK(BigInt::from_string("-0").to_string() == "0");
    CHECK_THROWS(BigInt::from_string(""));
    CHECK_THROWS(BigInt::from_string("12a3"));
    CHECK_THROWS(BigInt::from_string("--5"));
}

TEST_CASE("addition and subtraction") {
    BigInt a = BigInt::from_string("99999999999999999999");
    CHECK((a + BigInt(1)).to_string() == "100000000000000000000");
    CHECK((a - a).is_zero());
    CHECK((BigInt(5) - BigInt(8)).to_string() == "-3");
    CHECK((-a + a).is_zero());
    // carries across several limbs
    BigInt b = BigInt::from_string("18446744073709551615");  // 2^64 - 1
    CHECK((b + BigInt(1)).to_string() == "18446744073709551616");
}

TEST_CASE("multiplication known values") {
    CHECK((BigInt(0) * BigInt(12345)).is_zero());
    CHECK((BigInt(-7) * BigInt(6)).to_string() == "-42");
    BigInt p = BigInt::from_string("123456789123456789");
    CHECK((p * p).to_string() == "15241578780673678515622620750190521");
    // 30! computed incrementally
    BigInt f(1);
    for (long long k = 2; k <= 30; ++k) f = f * BigInt(k);
    CHECK(f.to_string() == "265252859812191058636308480000000");
}

TEST_CASE("karatsuba agrees with schoolbook") {
    size_t saved = BigInt::karatsuba_threshold;
    SeededRng rng(2024, 0);
    for (int i = 0; i < 50; ++i) {
        std::string sa, sb;
        sa += '1' + static_cast<char>(rng.next_int(0, 8));
        sb += '1' + static_cast<char>(rng.next_int(0, 8));
        long long la = rng.next_int(1, 120), lb = rng.next_int(1, 120);
        for (long long k = 0; k < la; ++k) sa += '0' + static_cast<char>(rng.next_int(0, 9));
        for (long long k = 0; k < lb; ++k) sb += '0' + static_cast<char>(rng.next_int(0, 9));
        BigInt a = BigInt::from_string(sa), b = BigInt::from_string(sb);
        BigInt::karatsuba_threshold = 1000000;  // force schoolbook
        BigInt school = a * b;
        BigInt::karatsuba_threshold = 2;  // force divide and conquer
        BigInt fast = a * b;
        CHECK(school == fast);
    }
    BigInt::karatsuba_threshold = saved;
}

TEST_CASE("division and remainder") {
    BigInt a = BigInt::from_string("1000000000000000000000000000001");
    BigInt b = BigInt::from_string("998244353");
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(!r.is_negative());
    CHECK(r < b);
    CHECK((BigInt(17) / BigInt(5)).to_string() == "3");
    CHECK((BigInt(17) % BigInt(5)).to_string() == "2");
    CHECK_THROWS(BigInt(1) / BigInt(0));
    // randomized divmod identity
    SeededRng rng(7, 1);
    for (int i = 0; i < 50; ++i) {
        std::string sa = "9";
        for (int k = 0; k < 60; ++k) sa += '0' + static_cast<char>(rng.next_int(0, 9));
        BigInt x = BigInt::from_string(sa);
        BigInt y(rng.next_int(1, 1000000));
        BigInt::divmod(x, y, q, r);
        CHECK(q * y + r == x);
        CHECK(r < y);
    }
}

TEST_CASE("comparisons") {
    CHECK(BigInt(-5) < BigInt(3));
    CHECK(BigInt(3) < BigInt(5));
    CHECK(BigInt(-5) < BigInt(-3));
    CHECK(BigInt::from_string("100000000000000000000") > BigInt::from_string("99999999999999999999"));
    CHECK(BigInt(7) >= BigInt(7));
    CHECK(BigInt(7) <= BigInt(7));
}

TEST_CASE("gcd") {
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)).to_string() == "6");
    CHECK(BigInt::gcd(BigInt(0), BigInt(-7)).to_string() == "7");
    CHECK(BigInt::gcd(BigInt(-12), BigInt(-18)).to_string() == "6");
    BigInt f20(1), f25(1);
    for (long long k = 2; k <= 20; ++k) f20 = f20 * BigInt(k);
    for (long long k = 2; k <= 25; ++k) f25 = f25 * BigInt(k);
    CHECK(BigInt::gcd(f20, f25) == f20);
}

TEST_CASE("exact square root") {
    BigInt out;
    CHECK(BigInt(0).sqrt_exact(out));
    CHECK(out.is_zero());
    CHECK(BigInt(5184).sqrt_exact(out));
    CHECK(out.to_string() == "72");
    CHECK(BigInt(576).sqrt_exact(out));
    CHECK(out.to_string() == "24");
    CHECK(!BigInt(2).sqrt_exact(out));
    CHECK(!BigInt(-4).sqrt_exact(out));
    BigInt big = BigInt::from_string("123456789123456789123456789");
    CHECK((big * big).sqrt_exact(out));
    CHECK(out == big);
    CHECK(!(big * big + BigInt(1)).sqrt_exact(out));
}

TEST_CASE("int64 window") {
    CHECK(BigInt(42).fits_int64());
    CHECK(BigInt(-42).fits_int64());
    CHECK(!BigInt::from_string("340282366920938463463374607431768211456").fits_int64());
}
