#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "surfcheck/bigint.hpp"

namespace surfcheck {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator; zero is canonically 0/1.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(BigInt n) : num_(std::move(n)), den_(1) {}
    Rat(BigInt n, BigInt d);

    /// Parses "p", "p/q", with optional sign on p. No floats accepted.
    static Rat from_string(std::string_view s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_negative() const { return num_.is_negative(); }
    bool is_integer() const { return den_.is_one(); }

    Rat operator-() const;
    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    Rat inverse() const;

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return (num_ * o.den_) < (o.num_ * den_); }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator<=(const Rat& o) const { return !(o < *this); }
    bool operator>=(const Rat& o) const { return !(*this < o); }

    /// Exact square root when this is a square of a rational, else nullopt.
    std::optional<Rat> sqrt() const;

    std::string to_string() const;

private:
    BigInt num_;
    BigInt den_;
    void reduce();
};

/// Gaussian rational a + b*i. Field operations are exact; used for the
/// vertex-local computations whose tangent data is not rational.
class GaussRat {
public:
    GaussRat() = default;
    GaussRat(long long n) : re_(n) {}
    GaussRat(Rat re) : re_(std::move(re)) {}
    GaussRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}
    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussRat operator-() const { return GaussRat(-re_, -im_); }
    GaussRat operator+(const GaussRat& o) const { return GaussRat(re_ + o.re_, im_ + o.im_); }
    GaussRat operator-(const GaussRat& o) const { return GaussRat(re_ - o.re_, im_ - o.im_); }
    GaussRat operator*(const GaussRat& o) const {
        return GaussRat(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    GaussRat operator/(const GaussRat& o) const { return *this * o.inverse(); }
    GaussRat& operator+=(const GaussRat& o) { return *this = *this + o; }
    GaussRat& operator-=(const GaussRat& o) { return *this = *this - o; }
    GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }

    GaussRat inverse() const;
    GaussRat conj() const { return GaussRat(re_, -im_); }
    Rat norm() const { return re_ * re_ + im_ * im_; }

    bool operator==(const GaussRat& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussRat& o) const { return !(*this == o); }

    /// Exact square root within Q(i), when one exists.
    std::optional<GaussRat> sqrt() const;

    std::string to_string() const;

private:
    Rat re_;
    Rat im_;
};

/// Field trait hooks shared by the polynomial/series templates.
template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static std::optional<Rat> sqrt(const Rat& v) { return v.sqrt(); }
    static std::string to_coef_string(const Rat& v) { return v.to_string(); }
    /// True when v should print with a leading '-' and |v| otherwise.
    static bool print_negative(const Rat& v) { return v.is_negative(); }
    static Rat print_abs(const Rat& v) { return v.is_negative() ? -v : v; }
};

template <>
struct FieldOps<GaussRat> {
    static GaussRat zero() { return GaussRat(); }
    static GaussRat one() { return GaussRat(1); }
    static std::optional<GaussRat> sqrt(const GaussRat& v) { return v.sqrt(); }
    static std::string to_coef_string(const GaussRat& v) { return v.to_string(); }
    static bool print_negative(const GaussRat& v) {
        return v.is_real() ? v.re().is_negative() : (v.re().is_zero() && v.im().is_negative());
    }
    static GaussRat print_abs(const GaussRat& v) { return print_negative(v) ? -v : v; }
};

}  // namespace surfcheck
