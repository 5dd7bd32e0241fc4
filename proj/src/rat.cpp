#include "surfcheck/rat.hpp"

namespace surfcheck {

Rat::Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
    reduce();
}

void Rat::reduce() {
    if (den_.is_negative()) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rat Rat::operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rat Rat::operator+(const Rat& o) const {
    return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rat Rat::operator-(const Rat& o) const {
    return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rat Rat::operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }

Rat Rat::operator/(const Rat& o) const {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    return Rat(num_ * o.den_, den_ * o.num_);
}

Rat Rat::inverse() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(den_, num_);
}

std::optional<Rat> Rat::sqrt() const {
    if (is_negative()) return std::nullopt;
    BigInt sn, sd;
    if (!num_.sqrt_exact(sn) || !den_.sqrt_exact(sd)) return std::nullopt;
    return Rat(std::move(sn), std::move(sd));
}

std::string Rat::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rat Rat::from_string(std::string_view s) {
    size_t slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(BigInt::from_string(s));
    BigInt n = BigInt::from_string(s.substr(0, slash));
    BigInt d = BigInt::from_string(s.substr(slash + 1));
    return Rat(std::move(n), std::move(d));
}

GaussRat GaussRat::inverse() const {
    Rat n = norm();
    if (n.is_zero()) throw std::domain_error("GaussRat: inverse of zero");
    Rat ni = n.inverse();
    return GaussRat(re_ * ni, -(im_ * ni));
}

std::optional<GaussRat> GaussRat::sqrt() const {
    if (im_.is_zero()) {
        if (!re_.is_negative()) {
            auto r = re_.sqrt();
            if (!r) return std::nullopt;
            return GaussRat(*r);
        }
        auto r = (-re_).sqrt();
        if (!r) return std::nullopt;
        return GaussRat(Rat(0), *r);
    }
    // (x + yi)^2 = a + bi  =>  x^2 = (a + |a+bi|)/2, y = b/(2x).
    auto mod = norm().sqrt();
    if (!mod) return std::nullopt;
    Rat half(BigInt(1), BigInt(2));
    auto x = ((re_ + *mod) * half).sqrt();
    if (!x || x->is_zero()) return std::nullopt;
    Rat y = im_ / (Rat(2) * *x);
    GaussRat r(*x, y);
    if (r * r != *this) return std::nullopt;
    return r;
}

std::string GaussRat::to_string() const {
    if (im_.is_zero()) return re_.to_string();
    std::string im_part = im_.is_one() ? "i" : (im_ == Rat(-1) ? "-i" : im_.to_string() + "*i");
    if (re_.is_zero()) return im_part;
    if (im_.is_negative()) {
        Rat a = -im_;
        std::string p = a.is_one() ? "i" : a.to_string() + "*i";
        return "(" + re_.to_string() + "-" + p + ")";
    }
    return "(" + re_.to_string() + "+" + im_part + ")";
}

}  // namespace surfcheck
