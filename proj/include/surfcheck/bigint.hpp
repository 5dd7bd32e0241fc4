#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace surfcheck {

/// Arbitrary-precision signed integer.
///
/// Magnitude is a little-endian vector of 32-bit limbs with no leading
/// zeros; sign is -1, 0 or +1 (zero always has sign 0 and empty magnitude).
/// Multiplication switches from schoolbook to Karatsuba above
/// `karatsuba_threshold` limbs; the threshold is mutable for testing both
/// paths against each other.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);
    static BigInt from_string(std::string_view s);

    std::string to_string() const;

    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    bool is_one() const;
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt abs() const;

    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    /// Truncated division (quotient rounds toward zero, like C++ int).
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    bool operator==(const BigInt& o) const;
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator<=(const BigInt& o) const { return !(o < *this); }
    bool operator>=(const BigInt& o) const { return !(*this < o); }

    static BigInt gcd(BigInt a, BigInt b);
    /// Floor of the square root of a non-negative integer.
    BigInt isqrt() const;
    /// Exact square root if *this is a perfect square, else nullopt-like flag.
    bool sqrt_exact(BigInt& out) const;

    bool fits_int64() const;
    long long to_int64() const;

    size_t limb_count() const { return mag_.size(); }

    static size_t karatsuba_threshold;

private:
    int sign_ = 0;
    std::vector<uint32_t> mag_;

    void normalize();
    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> mul_school(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                           std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

}  // namespace surfcheck
