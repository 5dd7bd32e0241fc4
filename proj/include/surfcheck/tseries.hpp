#pragma once

#include <optional>

#include "surfcheck/mpoly.hpp"

namespace surfcheck {

/// Multivariate power series truncated at total degree `order`: the graded
/// pieces 0..order-1 are stored, everything of degree >= order is discarded.
/// Binary operations require equal context and equal order.
template <class K>
class TSeriesT {
public:
    TSeriesT() = default;
    TSeriesT(VarCtxPtr ctx, uint32_t order) : ctx_(std::move(ctx)), order_(order) {
        if (order_ < 1) throw std::invalid_argument("TSeries: order must be >= 1");
        pieces_.assign(order_, MPolyT<K>(ctx_));
    }

    static TSeriesT from_poly(const MPolyT<K>& p, uint32_t order) {
        TSeriesT s(p.ctx(), order);
        for (const auto& [m, c] : p.terms()) {
            uint32_t d = mono_degree(m);
            if (d < order) s.pieces_[d] += MPolyT<K>::monomial(p.ctx(), m, c);
        }
        return s;
    }

    static TSeriesT constant(VarCtxPtr ctx, uint32_t order, K c) {
        TSeriesT s(std::move(ctx), order);
        s.pieces_[0] = MPolyT<K>::constant(s.ctx_, std::move(c));
        return s;
    }

    const VarCtxPtr& ctx() const { return ctx_; }
    uint32_t order() const { return order_; }
    const MPolyT<K>& piece(uint32_t d) const { return pieces_.at(d); }

    /// Sum of the stored pieces as a plain polynomial.
    MPolyT<K> poly() const {
        MPolyT<K> p(ctx_);
        for (const auto& q : pieces_) p += q;
        return p;
    }

    bool is_zero() const {
        for (const auto& p : pieces_)
            if (!p.is_zero()) return false;
        return true;
    }

    /// Smallest degree with a nonzero piece; -1 for the zero series.
    int valuation() const {
        for (uint32_t d = 0; d < order_; ++d)
            if (!pieces_[d].is_zero()) return static_cast<int>(d);
        return -1;
    }

    K constant_term() const { return pieces_[0].constant_value(); }
    bool is_unit() const { return !constant_term().is_zero(); }

    bool operator==(const TSeriesT& o) const {
        return same_context(ctx_, o.ctx_) && order_ == o.order_ && pieces_ == o.pieces_;
    }
    bool operator!=(const TSeriesT& o) const { return !(*this == o); }

    TSeriesT truncate(uint32_t new_order) const {
        if (new_order > order_) throw std::invalid_argument("TSeries: cannot extend the order");
        TSeriesT s(ctx_, new_order);
        for (uint32_t d = 0; d < new_order; ++d) s.pieces_[d] = pieces_[d];
        return s;
    }

    void check_compat(const TSeriesT& o) const {
        if (!same_context(ctx_, o.ctx_) || order_ != o.order_)
            throw std::invalid_argument("TSeries: context/order mismatch");
    }

    TSeriesT operator-() const {
        TSeriesT s(ctx_, order_);
        for (uint32_t d = 0; d < order_; ++d) s.pieces_[d] = -pieces_[d];
        return s;
    }

    TSeriesT operator+(const TSeriesT& o) const {
        check_compat(o);
        TSeriesT s(ctx_, order_);
        for (uint32_t d = 0; d < order_; ++d) s.pieces_[d] = pieces_[d] + o.pieces_[d];
        return s;
    }

    TSeriesT operator-(const TSeriesT& o) const {
        check_compat(o);
        TSeriesT s(ctx_, order_);
        for (uint32_t d = 0; d < order_; ++d) s.pieces_[d] = pieces_[d] - o.pieces_[d];
        return s;
    }

    TSeriesT operator*(const TSeriesT& o) const {
        check_compat(o);
        TSeriesT s(ctx_, order_);
        for (uint32_t i = 0; i < order_; ++i) {
            if (pieces_[i].is_zero()) continue;
            for (uint32_t j = 0; i + j < order_; ++j) {
                if (o.pieces_[j].is_zero()) continue;
                s.pieces_[i + j] += pieces_[i] * o.pieces_[j];
            }
        }
        return s;
    }

    TSeriesT operator*(const K& c) const {
        TSeriesT s(ctx_, order_);
        for (uint32_t d = 0; d < order_; ++d) s.pieces_[d] = pieces_[d] * c;
        return s;
    }

    TSeriesT& operator+=(const TSeriesT& o) { return *this = *this + o; }
    TSeriesT& operator-=(const TSeriesT& o) { return *this = *this - o; }
    TSeriesT& operator*=(const TSeriesT& o) { return *this = *this * o; }

    /// Multiplicative inverse of a unit, solved degree by degree.
    TSeriesT inverse() const {
        K c0 = constant_term();
        if (c0.is_zero()) throw std::domain_error("TSeries: inverse of a non-unit");
        K c0_inv = FieldOps<K>::one() / c0;
        TSeriesT r(ctx_, order_);
        r.pieces_[0] = MPolyT<K>::constant(ctx_, c0_inv);
        // (sum r_i)(sum s_j) = 1: at degree d>0, c0*r_d = -sum_{i<d} r_i s_{d-i}.
        for (uint32_t d = 1; d < order_; ++d) {
            MPolyT<K> acc(ctx_);
            for (uint32_t i = 0; i < d; ++i) {
                if (r.pieces_[i].is_zero() || pieces_[d - i].is_zero()) continue;
                acc += r.pieces_[i] * pieces_[d - i];
            }
            r.pieces_[d] = (-acc) * c0_inv;
        }
        return r;
    }

    /// Square root of a unit whose constant term is a square in K; the
    /// constant term of the result is the principal root.
    TSeriesT sqrt_unit() const {
        K c0 = constant_term();
        if (c0.is_zero()) throw std::domain_error("TSeries: sqrt of a non-unit");
        auto r0 = FieldOps<K>::sqrt(c0);
        if (!r0) throw std::domain_error("TSeries: constant term is not a square");
        TSeriesT r(ctx_, order_);
        r.pieces_[0] = MPolyT<K>::constant(ctx_, *r0);
        K two_r0_inv = FieldOps<K>::one() / (*r0 + *r0);
        // 2 r_0 r_d = s_d - sum_{0<i<d} r_i r_{d-i}.
        for (uint32_t d = 1; d < order_; ++d) {
            MPolyT<K> acc = pieces_[d];
            for (uint32_t i = 1; i < d; ++i) {
                if (r.pieces_[i].is_zero() || r.pieces_[d - i].is_zero()) continue;
                acc -= r.pieces_[i] * r.pieces_[d - i];
            }
            r.pieces_[d] = acc * two_r0_inv;
        }
        return r;
    }

    /// Square root of a non-unit whose lowest graded piece is the square of
    /// a single form (degree m); the result is valid mod (order - m). On
    /// failure returns nullopt and reports the first degree whose division
    /// fails (or the valuation itself when the lowest piece is not a square).
    std::optional<TSeriesT> sqrt_graded(int* failing_degree = nullptr) const {
        int val = valuation();
        if (val < 0) throw std::domain_error("TSeries: sqrt of zero series");
        if (val % 2 != 0) {
            if (failing_degree) *failing_degree = val;
            return std::nullopt;
        }
        uint32_t m = static_cast<uint32_t>(val) / 2;
        auto low = pieces_[static_cast<size_t>(val)].sqrt_homogeneous();
        if (!low) {
            if (failing_degree) *failing_degree = val;
            return std::nullopt;
        }
        uint32_t res_order = order_ - m;
        TSeriesT r(ctx_, res_order);
        r.pieces_[m] = *low;
        MPolyT<K> two_low = *low + *low;
        // At degree 2m+d (d>0): 2 r_m r_{m+d} = s_{2m+d} - sum r_{m+i} r_{m+d-i}.
        for (uint32_t d = 1; m + d < res_order; ++d) {
            MPolyT<K> acc(ctx_);
            if (static_cast<uint32_t>(val) + d < order_) acc = pieces_[val + d];
            for (uint32_t i = 1; i < d; ++i) {
                if (r.pieces_[m + i].is_zero() || r.pieces_[m + d - i].is_zero()) continue;
                acc -= r.pieces_[m + i] * r.pieces_[m + d - i];
            }
            auto h = acc.exact_divide(two_low);
            if (!h) {
                if (failing_degree) *failing_degree = static_cast<int>(val + d);
                return std::nullopt;
            }
            r.pieces_[m + d] = *h;
        }
        return r;
    }

    /// Exact division of every term by a monomial; the order drops by the
    /// monomial's degree. Nullopt when some term is not divisible.
    std::optional<TSeriesT> divide_monomial(const Mono& m) const {
        uint32_t md = mono_degree(m);
        if (md >= order_) throw std::invalid_argument("TSeries: monomial degree exceeds order");
        TSeriesT s(ctx_, order_ - md);
        for (uint32_t d = 0; d < md; ++d)
            if (!pieces_[d].is_zero()) return std::nullopt;
        for (uint32_t d = md; d < order_; ++d) {
            auto q = pieces_[d].divide_monomial(m);
            if (!q) return std::nullopt;
            s.pieces_[d - md] = *q;
        }
        return s;
    }

    /// Multiplication by a monomial; the order rises by the monomial's degree
    /// (no information is lost, so the higher order is still exact).
    TSeriesT mul_monomial(const Mono& m, const K& c) const {
        uint32_t md = mono_degree(m);
        TSeriesT s(ctx_, order_ + md);
        for (uint32_t d = 0; d < order_; ++d) s.pieces_[d + md] = pieces_[d].mul_monomial(m, c);
        return s;
    }

    std::string to_string() const { return poly().to_string(); }

private:
    VarCtxPtr ctx_;
    uint32_t order_ = 0;
    std::vector<MPolyT<K>> pieces_;
};

using TSeries = TSeriesT<Rat>;
using GSeries = TSeriesT<GaussRat>;

/// Composition s(curve): each context variable of s is replaced by a
/// univariate series in the curve parameter. Every component must vanish at
/// the origin, so the composition is well defined at the series order.
template <class K>
TSeriesT<K> ts_substitute_curve(const TSeriesT<K>& s, const std::vector<TSeriesT<K>>& curve) {
    if (curve.size() != s.ctx()->arity())
        throw std::invalid_argument("ts_substitute_curve: one component per variable required");
    VarCtxPtr tctx = curve[0].ctx();
    if (tctx->arity() != 1)
        throw std::invalid_argument("ts_substitute_curve: curve components must be univariate");
    uint32_t order = s.order();
    for (const auto& comp : curve) {
        if (!same_context(comp.ctx(), tctx))
            throw std::invalid_argument("ts_substitute_curve: curve context mismatch");
        order = std::min(order, comp.order());
        if (!comp.is_zero() && comp.valuation() < 1)
            throw std::invalid_argument("ts_substitute_curve: curve must vanish at t=0");
    }
    TSeriesT<K> out(tctx, order);
    std::vector<MPolyT<K>> images;
    images.reserve(curve.size());
    for (const auto& comp : curve) images.push_back(comp.truncate(order).poly());
    for (uint32_t d = 0; d < s.order(); ++d) {
        if (s.piece(d).is_zero()) continue;
        MPolyT<K> img = s.piece(d).substitute(tctx, images);
        out += TSeriesT<K>::from_poly(img, order);
    }
    return out;
}

/// The data of the local factorization of an even quartic
/// Q = a v^4 + b v^2 + c in the split variable v: the discriminant
/// delta = b^2 - 4ac, its square root split as monomial * cofactor, and the
/// two quadratic factors Q± = sqrt_a v^2 + e± with e± = (b ± sqrt(delta))/(2 sqrt_a).
/// All series live in the chart context with the split variable absent from
/// their terms, truncated at the public order.
template <class K>
struct QuarticSplitT {
    VarCtxPtr ctx;
    size_t split_var = 0;
    uint32_t order = 0;
    TSeriesT<K> a, b, c;
    TSeriesT<K> delta;
    Mono delta_monomial;              // the extracted square monomial of delta
    TSeriesT<K> sqrt_a;
    TSeriesT<K> sqrt_delta_cofactor;  // sqrt(delta / delta_monomial), a unit
    TSeriesT<K> sqrt_delta;
    TSeriesT<K> e_plus, e_minus;      // constant-in-v parts of Q±

    /// Q± reassembled as a series in the full chart (degree-2 term included).
    TSeriesT<K> q_factor(bool plus) const {
        Mono v2(ctx->arity(), 0);
        v2[split_var] = 2;
        TSeriesT<K> head = sqrt_a.mul_monomial(v2, FieldOps<K>::one()).truncate(order);
        return head + (plus ? e_plus : e_minus);
    }
};

using QuarticSplit = QuarticSplitT<Rat>;
using GQuarticSplit = QuarticSplitT<GaussRat>;

struct SeriesError : std::runtime_error {
    explicit SeriesError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Factors an even quartic (in the split variable) into its two quadratic
/// factors over the local power-series ring. Internally works a few degrees
/// above the requested order so that every identity stored in the result is
/// exact modulo `order` despite the monomial division inside sqrt(delta).
template <class K>
QuarticSplitT<K> factor_quartic_vertical(const MPolyT<K>& qaff, size_t split_var, uint32_t order) {
    const VarCtxPtr& ctx = qaff.ctx();
    if (split_var >= ctx->arity())
        throw std::invalid_argument("factor_quartic_vertical: bad split variable");
    if (qaff.degree_in(split_var) != 4)
        throw SeriesError("factor_quartic_vertical: not of degree 4 in the split variable");
    for (const auto& [m, cf] : qaff.terms())
        if (m[split_var] % 2 != 0)
            throw SeriesError("factor_quartic_vertical: odd power of the split variable present");
    uint32_t internal = order + 4;

    QuarticSplitT<K> out;
    out.ctx = ctx;
    out.split_var = split_var;
    out.order = order;

    MPolyT<K> pa = qaff.coeff_of_power(split_var, 4);
    MPolyT<K> pb = qaff.coeff_of_power(split_var, 2);
    MPolyT<K> pc = qaff.coeff_of_power(split_var, 0);
    TSeriesT<K> a = TSeriesT<K>::from_poly(pa, internal);
    TSeriesT<K> b = TSeriesT<K>::from_poly(pb, internal);
    TSeriesT<K> c = TSeriesT<K>::from_poly(pc, internal);

    if (!a.is_unit())
        throw SeriesError("factor_quartic_vertical: leading coefficient is not a unit");
    TSeriesT<K> sqrt_a;
    try {
        sqrt_a = a.sqrt_unit();
    } catch (const std::domain_error&) {
        throw SeriesError("factor_quartic_vertical: leading constant term is not a square");
    }

    TSeriesT<K> delta = b * b - (a * c) * K(4);
    int dval = delta.valuation();
    if (dval < 0)
        throw SeriesError("factor_quartic_vertical: discriminant vanishes to the working order");
    if (static_cast<uint32_t>(dval) / 2 > internal - order)
        throw SeriesError("factor_quartic_vertical: discriminant valuation too deep for the order margin");
    // Split delta as monomial^2 * cofactor: pull out the largest monomial
    // dividing every term, then take the graded square root of the rest.
    Mono common(ctx->arity(), 0xffffffffu);
    for (uint32_t d = static_cast<uint32_t>(dval); d < delta.order(); ++d)
        for (const auto& [m, cf] : delta.piece(d).terms())
            for (size_t i = 0; i < common.size(); ++i) common[i] = std::min(common[i], m[i]);
    Mono half(common.size());
    for (size_t i = 0; i < common.size(); ++i) {
        if (common[i] % 2 != 0)
            throw SeriesError("factor_quartic_vertical: discriminant monomial part is not a square");
        half[i] = common[i] / 2;
    }
    auto cofactor = delta.divide_monomial(common);
    if (!cofactor)
        throw SeriesError("factor_quartic_vertical: discriminant monomial extraction failed");
    int sq_fail = -1;
    auto cof_sqrt = cofactor->sqrt_graded(&sq_fail);
    if (!cof_sqrt)
        throw SeriesError("factor_quartic_vertical: discriminant cofactor is not a square (degree " +
                          std::to_string(sq_fail) + ")");
    TSeriesT<K> sqrt_delta = cof_sqrt->mul_monomial(half, FieldOps<K>::one());
    uint32_t sd_order = std::min<uint32_t>(sqrt_delta.order(), internal);
    sqrt_delta = sqrt_delta.truncate(sd_order);

    TSeriesT<K> inv_2sa = (sqrt_a * K(2)).inverse();
    TSeriesT<K> e_plus = (b.truncate(sd_order) + sqrt_delta) * inv_2sa.truncate(sd_order);
    TSeriesT<K> e_minus = (b.truncate(sd_order) - sqrt_delta) * inv_2sa.truncate(sd_order);

    out.a = a.truncate(order);
    out.b = b.truncate(order);
    out.c = c.truncate(order);
    out.delta = delta.truncate(order);
    out.delta_monomial = common;
    out.sqrt_a = sqrt_a.truncate(order);
    out.sqrt_delta_cofactor = cof_sqrt->truncate(std::min<uint32_t>(cof_sqrt->order(), order));
    out.sqrt_delta = sqrt_delta.truncate(std::min(sd_order, order));
    out.e_plus = e_plus.truncate(std::min<uint32_t>(e_plus.order(), order));
    out.e_minus = e_minus.truncate(std::min<uint32_t>(e_minus.order(), order));
    return out;
}

/// One quadratic factor Q± = sqrt_a (v - psi)(v + psi) split into its two
/// smooth branches v = ±psi, with psi solved as a graded square root of
/// -e±/sqrt_a. psi's linear form is normalized so its coefficient on the
/// first context variable does not print as negative; the branch factors are
/// emitted as (v - psi, v + psi) in that fixed order.
template <class K>
struct BranchSplitT {
    TSeriesT<K> psi;
    TSeriesT<K> factor_minus;  // v - psi
    TSeriesT<K> factor_plus;   // v + psi
};

using BranchSplit = BranchSplitT<Rat>;
using GBranchSplit = BranchSplitT<GaussRat>;

template <class K>
BranchSplitT<K> branch_split(const QuarticSplitT<K>& split, bool plus) {
    const TSeriesT<K>& e = plus ? split.e_plus : split.e_minus;
    TSeriesT<K> target = -(e * split.sqrt_a.truncate(e.order()).inverse());
    int failing = -1;
    auto psi_opt = target.sqrt_graded(&failing);
    if (!psi_opt)
        throw SeriesError("branch_split: -e/sqrt(a) is not a square (first failure at degree " +
                          std::to_string(failing) + ")");
    TSeriesT<K> psi = *psi_opt;
    // Fix the overall sign deterministically via the linear part.
    if (psi.valuation() != 1)
        throw SeriesError("branch_split: branch is not smooth (linear part missing)");
    const MPolyT<K>& lin = psi.piece(1);
    K lead = FieldOps<K>::zero();
    for (size_t v = 0; v < split.ctx->arity() && lead.is_zero(); ++v) {
        Mono m(split.ctx->arity(), 0);
        m[v] = 1;
        lead = lin.coeff(m);
    }
    if (FieldOps<K>::print_negative(lead)) psi = -psi;

    uint32_t ord = std::min<uint32_t>(psi.order(), split.order);
    psi = psi.truncate(ord);
    Mono v1(split.ctx->arity(), 0);
    v1[split.split_var] = 1;
    TSeriesT<K> v = TSeriesT<K>::from_poly(MPolyT<K>::variable(split.ctx, split.split_var), ord);
    BranchSplitT<K> out;
    out.psi = psi;
    out.factor_minus = v - psi;
    out.factor_plus = v + psi;
    return out;
}

}  // namespace surfcheck
