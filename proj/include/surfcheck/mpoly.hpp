#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "surfcheck/rat.hpp"
#include "surfcheck/varctx.hpp"

namespace surfcheck {

using Mono = std::vector<uint32_t>;

inline uint32_t mono_degree(const Mono& m) {
    uint32_t d = 0;
    for (uint32_t e : m) d += e;
    return d;
}

/// Graded lexicographic order: compare total degree first, then the
/// exponent vector lexicographically (earlier variables more significant).
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const {
        uint32_t da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

/// Sparse multivariate polynomial over an exact coefficient field K.
/// Invariants: no stored coefficient is zero; every exponent vector has
/// length equal to the context arity.
template <class K>
class MPolyT {
public:
    using TermMap = std::map<Mono, K, GrlexLess>;

    MPolyT() = default;
    explicit MPolyT(VarCtxPtr ctx) : ctx_(std::move(ctx)) {}

    static MPolyT zero(VarCtxPtr ctx) { return MPolyT(std::move(ctx)); }

    static MPolyT constant(VarCtxPtr ctx, K c) {
        MPolyT p(std::move(ctx));
        if (!c.is_zero()) p.terms_[Mono(p.ctx_->arity(), 0)] = std::move(c);
        return p;
    }

    static MPolyT variable(VarCtxPtr ctx, size_t v, uint32_t exp = 1) {
        MPolyT p(std::move(ctx));
        if (v >= p.ctx_->arity()) throw std::out_of_range("MPoly: variable index");
        Mono m(p.ctx_->arity(), 0);
        m[v] = exp;
        p.terms_[std::move(m)] = FieldOps<K>::one();
        return p;
    }

    static MPolyT monomial(VarCtxPtr ctx, Mono m, K c) {
        MPolyT p(std::move(ctx));
        if (m.size() != p.ctx_->arity()) throw std::invalid_argument("MPoly: bad exponent vector");
        if (!c.is_zero()) p.terms_[std::move(m)] = std::move(c);
        return p;
    }

    const VarCtxPtr& ctx() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
    }

    K constant_value() const {
        if (terms_.empty()) return FieldOps<K>::zero();
        auto it = terms_.find(Mono(ctx_->arity(), 0));
        return it == terms_.end() ? FieldOps<K>::zero() : it->second;
    }

    /// Coefficient of a specific monomial (zero when absent).
    K coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? FieldOps<K>::zero() : it->second;
    }

    int total_degree() const {  // -1 for the zero polynomial
        if (terms_.empty()) return -1;
        return static_cast<int>(mono_degree(terms_.rbegin()->first));
    }

    int min_degree() const {  // valuation; -1 for zero
        if (terms_.empty()) return -1;
        int d = -1;
        for (const auto& [m, c] : terms_) {
            int md = static_cast<int>(mono_degree(m));
            if (d < 0 || md < d) d = md;
        }
        return d;
    }

    int degree_in(size_t v) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[v]));
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        uint32_t d = mono_degree(terms_.begin()->first);
        for (const auto& [m, c] : terms_)
            if (mono_degree(m) != d) return false;
        return true;
    }

    /// Leading term under grlex (largest). Polynomial must be nonzero.
    std::pair<Mono, K> leading_term() const {
        if (terms_.empty()) throw std::domain_error("MPoly: leading term of zero");
        auto it = terms_.rbegin();
        return {it->first, it->second};
    }

    void check_ctx(const MPolyT& o) const {
        if (!same_context(ctx_, o.ctx_))
            throw std::invalid_argument("MPoly: context mismatch");
    }

    MPolyT operator-() const {
        MPolyT r(ctx_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    MPolyT operator+(const MPolyT& o) const {
        check_ctx(o);
        MPolyT r = *this;
        for (const auto& [m, c] : o.terms_) {
            auto it = r.terms_.find(m);
            if (it == r.terms_.end()) {
                r.terms_[m] = c;
            } else {
                it->second += c;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }

    MPolyT operator-(const MPolyT& o) const { return *this + (-o); }

    MPolyT operator*(const MPolyT& o) const {
        check_ctx(o);
        MPolyT r(ctx_);
        for (const auto& [ma, ca] : terms_) {
            for (const auto& [mb, cb] : o.terms_) {
                Mono m(ma.size());
                for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                K prod = ca * cb;
                auto it = r.terms_.find(m);
                if (it == r.terms_.end()) {
                    if (!prod.is_zero()) r.terms_[std::move(m)] = std::move(prod);
                } else {
                    it->second += prod;
                    if (it->second.is_zero()) r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    MPolyT operator*(const K& s) const {
        MPolyT r(ctx_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
        return r;
    }

    MPolyT& operator+=(const MPolyT& o) { return *this = *this + o; }
    MPolyT& operator-=(const MPolyT& o) { return *this = *this - o; }
    MPolyT& operator*=(const MPolyT& o) { return *this = *this * o; }

    MPolyT pow(uint32_t k) const {
        MPolyT r = constant(ctx_, FieldOps<K>::one());
        MPolyT base = *this;
        while (k != 0) {
            if (k & 1) r = r * base;
            k >>= 1;
            if (k != 0) base = base * base;
        }
        return r;
    }

    bool operator==(const MPolyT& o) const {
        return same_context(ctx_, o.ctx_) && terms_ == o.terms_;
    }
    bool operator!=(const MPolyT& o) const { return !(*this == o); }

    MPolyT derivative(size_t v) const {
        if (v >= ctx_->arity()) throw std::invalid_argument("MPoly: unknown variable");
        MPolyT r(ctx_);
        for (const auto& [m, c] : terms_) {
            if (m[v] == 0) continue;
            Mono n = m;
            n[v] -= 1;
            r.terms_[std::move(n)] = c * K(static_cast<long long>(m[v]));
        }
        return r;
    }

    /// Ring homomorphism: each context variable is replaced by its image
    /// (all images over a common target context).
    MPolyT substitute(const VarCtxPtr& target, const std::vector<MPolyT>& images) const {
        if (images.size() != ctx_->arity())
            throw std::invalid_argument("MPoly: substitute needs one image per variable");
        for (const auto& im : images)
            if (!same_context(im.ctx(), target))
                throw std::invalid_argument("MPoly: substitute image context mismatch");
        // Precompute the needed powers of each image.
        std::vector<std::vector<MPolyT>> pows(ctx_->arity());
        for (size_t v = 0; v < ctx_->arity(); ++v) {
            uint32_t maxe = 0;
            for (const auto& [m, c] : terms_) maxe = std::max(maxe, m[v]);
            pows[v].push_back(constant(target, FieldOps<K>::one()));
            for (uint32_t e = 1; e <= maxe; ++e) pows[v].push_back(pows[v].back() * images[v]);
        }
        MPolyT r(target);
        for (const auto& [m, c] : terms_) {
            MPolyT t = constant(target, c);
            for (size_t v = 0; v < m.size(); ++v)
                if (m[v] != 0) t = t * pows[v][m[v]];
            r += t;
        }
        return r;
    }

    /// Partial substitution of one variable by a scalar, same context.
    MPolyT set_var(size_t v, const K& value) const {
        if (v >= ctx_->arity()) throw std::invalid_argument("MPoly: unknown variable");
        MPolyT r(ctx_);
        for (const auto& [m, c] : terms_) {
            K cc = c;
            if (m[v] != 0) {
                if (value.is_zero()) continue;
                K p = FieldOps<K>::one();
                for (uint32_t e = 0; e < m[v]; ++e) p *= value;
                cc = cc * p;
            }
            Mono n = m;
            n[v] = 0;
            auto it = r.terms_.find(n);
            if (it == r.terms_.end()) {
                if (!cc.is_zero()) r.terms_[std::move(n)] = std::move(cc);
            } else {
                it->second += cc;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
        return r;
    }

    /// Total evaluation at a point.
    K eval(const std::vector<K>& point) const {
        if (point.size() != ctx_->arity())
            throw std::invalid_argument("MPoly: eval point arity mismatch");
        K acc = FieldOps<K>::zero();
        for (const auto& [m, c] : terms_) {
            K t = c;
            for (size_t v = 0; v < m.size(); ++v)
                for (uint32_t e = 0; e < m[v]; ++e) t *= point[v];
            acc += t;
        }
        return acc;
    }

    /// Sum of terms of total degree exactly d in the selected variables
    /// (empty selection means all variables).
    MPolyT homogeneous_part(uint32_t d, const std::vector<size_t>& vars = {}) const {
        MPolyT r(ctx_);
        for (const auto& [m, c] : terms_) {
            uint32_t deg = 0;
            if (vars.empty()) {
                deg = mono_degree(m);
            } else {
                for (size_t v : vars) deg += m[v];
            }
            if (deg == d) r.terms_[m] = c;
        }
        return r;
    }

    /// Coefficient of v^k, as a polynomial in the same context with the
    /// v-exponent zeroed out.
    MPolyT coeff_of_power(size_t v, uint32_t k) const {
        MPolyT r(ctx_);
        for (const auto& [m, c] : terms_) {
            if (m[v] != k) continue;
            Mono n = m;
            n[v] = 0;
            r.terms_[std::move(n)] = c;
        }
        return r;
    }

    /// Exact quotient p/q when it exists (multivariate reduction with
    /// respect to the grlex term order); nullopt when not divisible.
    std::optional<MPolyT> exact_divide(const MPolyT& q) const {
        check_ctx(q);
        if (q.is_zero()) throw std::domain_error("MPoly: division by zero polynomial");
        MPolyT rem = *this;
        MPolyT quot(ctx_);
        auto [qm, qc] = q.leading_term();
        K qc_inv = FieldOps<K>::one() / qc;
        while (!rem.is_zero()) {
            auto [rm, rc] = rem.leading_term();
            Mono d(rm.size());
            bool divides = true;
            for (size_t i = 0; i < rm.size(); ++i) {
                if (rm[i] < qm[i]) {
                    divides = false;
                    break;
                }
                d[i] = rm[i] - qm[i];
            }
            if (!divides) return std::nullopt;
            MPolyT t = monomial(ctx_, std::move(d), rc * qc_inv);
            quot += t;
            rem -= t * q;
        }
        return quot;
    }

    /// Exact square root of a homogeneous perfect square; nullopt otherwise.
    std::optional<MPolyT> sqrt_homogeneous() const {
        if (is_zero()) return MPolyT(ctx_);
        if (!is_homogeneous() || total_degree() % 2 != 0) return std::nullopt;
        auto [lm, lc] = leading_term();
        auto lc_sqrt = FieldOps<K>::sqrt(lc);
        if (!lc_sqrt) return std::nullopt;
        Mono half(lm.size());
        for (size_t i = 0; i < lm.size(); ++i) {
            if (lm[i] % 2 != 0) return std::nullopt;
            half[i] = lm[i] / 2;
        }
        MPolyT r = monomial(ctx_, std::move(half), *lc_sqrt);
        MPolyT g = *this - r * r;
        auto [rm, rc] = r.leading_term();
        K two_rc = rc + rc;
        while (!g.is_zero()) {
            auto [gm, gc] = g.leading_term();
            Mono d(gm.size());
            for (size_t i = 0; i < gm.size(); ++i) {
                if (gm[i] < rm[i]) return std::nullopt;
                d[i] = gm[i] - rm[i];
            }
            GrlexLess less;
            if (!less(d, rm)) return std::nullopt;  // correction must be below lt(r)
            r += monomial(ctx_, std::move(d), gc / two_rc);
            g = *this - r * r;
        }
        return r;
    }

    /// Exact division by a monomial, when every term is divisible.
    std::optional<MPolyT> divide_monomial(const Mono& m) const {
        MPolyT r(ctx_);
        for (const auto& [tm, c] : terms_) {
            Mono n(tm.size());
            for (size_t i = 0; i < tm.size(); ++i) {
                if (tm[i] < m[i]) return std::nullopt;
                n[i] = tm[i] - m[i];
            }
            r.terms_[std::move(n)] = c;
        }
        return r;
    }

    MPolyT mul_monomial(const Mono& m, const K& c) const {
        MPolyT r(ctx_);
        if (c.is_zero()) return r;
        for (const auto& [tm, tc] : terms_) {
            Mono n(tm.size());
            for (size_t i = 0; i < tm.size(); ++i) n[i] = tm[i] + m[i];
            r.terms_[std::move(n)] = tc * c;
        }
        return r;
    }

    /// Transports to a context that contains (at least) all variables this
    /// polynomial actually uses, matching variables by name.
    MPolyT rename(const VarCtxPtr& target) const {
        std::vector<long> map(ctx_->arity(), -1);
        for (size_t v = 0; v < ctx_->arity(); ++v) map[v] = target->index_of(ctx_->name(v));
        MPolyT r(target);
        for (const auto& [m, c] : terms_) {
            Mono n(target->arity(), 0);
            for (size_t v = 0; v < m.size(); ++v) {
                if (m[v] == 0) continue;
                if (map[v] < 0)
                    throw std::invalid_argument("MPoly: variable " + ctx_->name(v) +
                                                " missing from target context");
                n[static_cast<size_t>(map[v])] = m[v];
            }
            r.terms_[std::move(n)] = c;
        }
        return r;
    }

    std::string to_string() const;

private:
    VarCtxPtr ctx_;
    TermMap terms_;
};

using MPoly = MPolyT<Rat>;
using GPoly = MPolyT<GaussRat>;

// ---------------------------------------------------------------------------
// Printing (canonical: grlex descending, coefficient first, '*' separators,
// no unary '+').

template <class K>
std::string MPolyT<K>::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Mono& m = it->first;
        const K& c = it->second;
        bool neg = FieldOps<K>::print_negative(c);
        K mag = FieldOps<K>::print_abs(c);
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        bool has_factors = mono_degree(m) > 0;
        if (!has_factors) {
            out << FieldOps<K>::to_coef_string(mag);
        } else {
            bool printed = false;
            if (!mag.is_one()) {
                out << FieldOps<K>::to_coef_string(mag);
                printed = true;
            }
            for (size_t v = 0; v < m.size(); ++v) {
                if (m[v] == 0) continue;
                if (printed) out << "*";
                out << ctx_->name(v);
                if (m[v] > 1) out << "^" << m[v];
                printed = true;
            }
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Parsing (rational coefficients only; this is the on-disk grammar).

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

MPoly poly_parse(std::string_view text, const VarCtxPtr& ctx);

// ---------------------------------------------------------------------------
// Determinants and resultants.

/// Bareiss fraction-free elimination. `divide` must perform the (always
/// exact) division used between elimination steps.
template <class T, class DivFn>
T bareiss_determinant(std::vector<std::vector<T>> m, const T& one, DivFn divide) {
    size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("determinant: non-square input");
    if (n == 0) return one;
    bool negate = false;
    T prev = one;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) {
                // Entire column is zero below the diagonal: singular.
                return one - one;
            }
            std::swap(m[k], m[p]);
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                T num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = divide(num, prev);
            }
            m[i][k] = m[i][k] - m[i][k];  // zero of T
        }
        prev = m[k][k];
    }
    T det = m[n - 1][n - 1];
    return negate ? (det - det) - det : det;
}

template <class K>
K determinant(const std::vector<std::vector<K>>& m) {
    return bareiss_determinant<K>(m, FieldOps<K>::one(), [](const K& a, const K& b) { return a / b; });
}

template <class K>
MPolyT<K> determinant_poly(const std::vector<std::vector<MPolyT<K>>>& m, const VarCtxPtr& ctx) {
    MPolyT<K> one = MPolyT<K>::constant(ctx, FieldOps<K>::one());
    return bareiss_determinant<MPolyT<K>>(m, one, [](const MPolyT<K>& a, const MPolyT<K>& b) {
        auto q = a.exact_divide(b);
        if (!q) throw std::logic_error("Bareiss: inexact division");
        return *q;
    });
}

/// Sylvester resultant with respect to one variable. Row convention: the
/// first deg_var(p) rows carry q's coefficients, the rest carry p's
/// (so resultant(x-a, x-b, x) = b-a).
template <class K>
MPolyT<K> resultant(const MPolyT<K>& p, const MPolyT<K>& q, size_t var) {
    p.check_ctx(q);
    int m = p.degree_in(var);
    int n = q.degree_in(var);
    if (m <= 0 || n <= 0)
        throw std::invalid_argument("resultant: inputs must have positive degree in the variable");
    const VarCtxPtr& ctx = p.ctx();
    std::vector<MPolyT<K>> pc(m + 1), qc(n + 1);
    for (int i = 0; i <= m; ++i) pc[i] = p.coeff_of_power(var, static_cast<uint32_t>(i));
    for (int i = 0; i <= n; ++i) qc[i] = q.coeff_of_power(var, static_cast<uint32_t>(i));
    size_t size = static_cast<size_t>(m + n);
    std::vector<std::vector<MPolyT<K>>> s(size, std::vector<MPolyT<K>>(size, MPolyT<K>::zero(ctx)));
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) s[static_cast<size_t>(r)][static_cast<size_t>(r + i)] = qc[static_cast<size_t>(n - i)];
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) s[static_cast<size_t>(m + r)][static_cast<size_t>(r + i)] = pc[static_cast<size_t>(m - i)];
    return determinant_poly(s, ctx);
}

// ---------------------------------------------------------------------------
// Univariate helpers (dense, ascending coefficients).

template <class K>
std::vector<K> dense_coeffs(const MPolyT<K>& p, size_t var) {
    int d = p.degree_in(var);
    std::vector<K> out(static_cast<size_t>(std::max(d, 0)) + 1, FieldOps<K>::zero());
    for (const auto& [m, c] : p.terms()) {
        for (size_t v = 0; v < m.size(); ++v)
            if (v != var && m[v] != 0)
                throw std::invalid_argument("dense_coeffs: polynomial is not univariate in the variable");
        out[m[var]] = c;
    }
    return out;
}

template <class K>
void dense_trim(std::vector<K>& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

/// Monic gcd of dense univariate polynomials over the field K.
template <class K>
std::vector<K> dense_gcd(std::vector<K> a, std::vector<K> b) {
    dense_trim(a);
    dense_trim(b);
    while (!b.empty()) {
        // a mod b
        K lead_inv = FieldOps<K>::one() / b.back();
        while (a.size() >= b.size() && !a.empty()) {
            K f = a.back() * lead_inv;
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
            dense_trim(a);
            if (a.size() >= b.size() && !a.empty() && a.back().is_zero()) dense_trim(a);
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        K inv = FieldOps<K>::one() / a.back();
        for (K& c : a) c *= inv;
    }
    return a;
}

/// Rational specialization: primitive pseudo-remainder sequence over the
/// integers. The generic Euclid above explodes the fraction sizes already at
/// moderate degrees; clearing contents after every step keeps them flat.
inline std::vector<Rat> dense_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    dense_trim(a);
    dense_trim(b);
    auto primitive_int = [](const std::vector<Rat>& p) {
        BigInt lcm(1);
        for (const Rat& c : p) {
            BigInt g = BigInt::gcd(lcm, c.den());
            lcm = lcm / g * c.den();
        }
        std::vector<BigInt> out;
        out.reserve(p.size());
        BigInt content(0);
        for (const Rat& c : p) {
            out.push_back(c.num() * (lcm / c.den()));
            content = BigInt::gcd(content, out.back());
        }
        if (!content.is_zero() && !content.is_one())
            for (BigInt& c : out) c = c / content;
        return out;
    };
    std::vector<BigInt> A = primitive_int(a), B = primitive_int(b);
    while (!B.empty()) {
        if (A.size() < B.size()) {
            std::swap(A, B);
            continue;
        }
        // pseudo-remainder of A by B: repeatedly R <- lb*R - top*x^shift*B
        BigInt lb = B.back();
        std::vector<BigInt> R = A;
        while (R.size() >= B.size() && !R.empty()) {
            BigInt top = R.back();
            size_t shift = R.size() - B.size();
            for (BigInt& c : R) c = c * lb;
            for (size_t i = 0; i < B.size(); ++i) R[shift + i] -= top * B[i];
            while (!R.empty() && R.back().is_zero()) R.pop_back();
        }
        BigInt content(0);
        for (const BigInt& c : R) content = BigInt::gcd(content, c);
        if (!content.is_zero() && !content.is_one())
            for (BigInt& c : R) c = c / content;
        A = std::move(B);
        B = std::move(R);
    }
    std::vector<Rat> g;
    g.reserve(A.size());
    for (const BigInt& c : A) g.emplace_back(c);
    if (!g.empty()) {
        Rat inv = g.back().inverse();
        for (Rat& c : g) c *= inv;
    }
    return g;
}

/// Number of distinct complex roots: deg(p) - deg(gcd(p, p')).
template <class K>
int distinct_complex_root_count(const MPolyT<K>& p) {
    if (p.is_zero()) throw std::domain_error("distinct_complex_root_count: zero polynomial");
    long var = -1;
    for (size_t v = 0; v < p.ctx()->arity(); ++v) {
        if (p.degree_in(v) > 0) {
            if (var >= 0)
                throw std::invalid_argument("distinct_complex_root_count: polynomial is not univariate");
            var = static_cast<long>(v);
        }
    }
    if (var < 0) return 0;  // nonzero constant
    std::vector<K> a = dense_coeffs(p, static_cast<size_t>(var));
    std::vector<K> d(a.size() - 1, FieldOps<K>::zero());
    for (size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * K(static_cast<long long>(i));
    auto g = dense_gcd(a, d);
    size_t gdeg = g.empty() ? 0 : g.size() - 1;
    return static_cast<int>(a.size() - 1 - gdeg);
}

/// Rational polynomial lifted coefficient-wise into Q(i).
inline GPoly to_gauss(const MPoly& p) {
    GPoly r(p.ctx());
    for (const auto& [m, c] : p.terms()) r += GPoly::monomial(p.ctx(), m, GaussRat(c));
    return r;
}

}  // namespace surfcheck
