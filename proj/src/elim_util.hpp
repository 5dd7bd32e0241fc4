#pragma once

// Internal elimination helpers shared by the check implementations:
// binary-form handling, random coordinate changes, and the singular-locus
// scan for ternary forms. Not part of the public interface.

#include "surfcheck/models.hpp"

namespace surfcheck::elim {

/// Random 3x3 integer matrix with nonzero determinant. Small entries keep
/// the coefficient growth of the downstream resultants in check.
inline std::vector<std::vector<Rat>> random_gl3(SeededRng& rng, long long bound = 2) {
    for (int tries = 0; tries < 100; ++tries) {
        std::vector<std::vector<Rat>> m(3, std::vector<Rat>(3));
        for (auto& row : m)
            for (auto& v : row) v = Rat(rng.next_int(-bound, bound));
        if (!determinant(m).is_zero()) return m;
    }
    throw std::runtime_error("random_gl3: generator failure");
}

inline std::vector<std::vector<Rat>> identity3() {
    std::vector<std::vector<Rat>> m(3, std::vector<Rat>(3, Rat(0)));
    for (int i = 0; i < 3; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(i)] = Rat(1);
    return m;
}

/// Applies an invertible substitution u_i -> sum_j m[i][j] u_j.
template <class K>
MPolyT<K> apply_linear(const MPolyT<K>& p, const std::vector<std::vector<K>>& m) {
    const VarCtxPtr& ctx = p.ctx();
    std::vector<MPolyT<K>> images;
    for (size_t i = 0; i < ctx->arity(); ++i) {
        MPolyT<K> img(ctx);
        for (size_t j = 0; j < ctx->arity(); ++j)
            if (!m[i][j].is_zero()) img += MPolyT<K>::variable(ctx, j) * m[i][j];
        images.push_back(std::move(img));
    }
    return p.substitute(ctx, images);
}

/// Matrix-vector product over Rat.
inline std::vector<Rat> mat_apply(const std::vector<std::vector<Rat>>& m, const std::vector<Rat>& v) {
    std::vector<Rat> out(m.size(), Rat(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

/// Solves the 3x3 system m u = rhs exactly.
inline std::vector<Rat> solve3(const std::vector<std::vector<Rat>>& m, const std::vector<Rat>& rhs) {
    std::vector<std::vector<Rat>> a(3, std::vector<Rat>(4));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a[i][j] = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
        a[i][3] = rhs[static_cast<size_t>(i)];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = -1;
        for (int r = col; r < 3; ++r)
            if (!a[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::domain_error("solve3: singular matrix");
        std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
        Rat inv = a[col][col].inverse();
        for (int j = col; j < 4; ++j) a[col][j] *= inv;
        for (int r = 0; r < 3; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rat f = a[r][col];
            for (int j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return {a[0][3], a[1][3], a[2][3]};
}

/// Dense coefficients (ascending in `var`) of a binary form in (var, other),
/// dehomogenized at other = 1, trailing zeros trimmed.
template <class K>
std::vector<K> binary_dehom(const MPolyT<K>& p, size_t var, size_t other) {
    int d = p.total_degree();
    std::vector<K> out(static_cast<size_t>(std::max(d, 0)) + 1, FieldOps<K>::zero());
    for (const auto& [m, c] : p.terms()) {
        for (size_t v = 0; v < m.size(); ++v)
            if (v != var && v != other && m[v] != 0)
                throw std::invalid_argument("binary_dehom: not a binary form");
        out[m[var]] = c;
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

/// Dense coefficients in u2 of p(a, b, u2).
template <class K>
std::vector<K> slice_u2(const MPolyT<K>& p, const K& a, const K& b) {
    MPolyT<K> s = p.set_var(0, a).set_var(1, b);
    std::vector<K> out = dense_coeffs(s, 2);
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

template <class K>
std::vector<K> dense_gcd3(std::vector<K> a, std::vector<K> b, std::vector<K> c) {
    return dense_gcd(dense_gcd(std::move(a), std::move(b)), std::move(c));
}

/// Scalar Sylvester resultant of two dense univariate polynomials whose
/// exact degrees are forced to (m, n) (the leading entries must be nonzero).
inline Rat sylvester_scalar(const std::vector<Rat>& pc, const std::vector<Rat>& qc) {
    size_t m = pc.size() - 1, n = qc.size() - 1;
    size_t size = m + n;
    std::vector<std::vector<Rat>> s(size, std::vector<Rat>(size, Rat(0)));
    for (size_t r = 0; r < m; ++r)
        for (size_t i = 0; i <= n; ++i) s[r][r + i] = qc[n - i];
    for (size_t r = 0; r < n; ++r)
        for (size_t i = 0; i <= m; ++i) s[m + r][r + i] = pc[m - i];
    return determinant(s);
}

/// Resultant in u2 of two ternary forms, dehomogenized at u1 = 1, as dense
/// coefficients in u0 (trailing zeros trimmed, so a size below m*n + 1
/// witnesses a common root at the (1:0) direction). Requires homogeneous
/// inputs of full u2-degree, so the leading u2-coefficients are nonzero
/// constants and evaluation commutes with the resultant. Computed by
/// evaluation at m*n + 1 points and Newton interpolation, which avoids the
/// expensive polynomial-entry elimination.
inline std::vector<Rat> resultant_u2_dehom(const MPoly& p, const MPoly& q) {
    int m = p.degree_in(2), n = q.degree_in(2);
    if (m <= 0 || n <= 0) throw std::invalid_argument("resultant_u2_dehom: positive u2-degree required");
    if (p.total_degree() != m || q.total_degree() != n ||
        !p.coeff_of_power(2, static_cast<uint32_t>(m)).is_constant() ||
        !q.coeff_of_power(2, static_cast<uint32_t>(n)).is_constant())
        throw std::invalid_argument("resultant_u2_dehom: leading u2-coefficient must be constant");
    size_t points = static_cast<size_t>(m) * static_cast<size_t>(n) + 1;

    std::vector<MPoly> pcp(static_cast<size_t>(m) + 1), qcp(static_cast<size_t>(n) + 1);
    for (size_t i = 0; i < pcp.size(); ++i) pcp[i] = p.coeff_of_power(2, static_cast<uint32_t>(i));
    for (size_t i = 0; i < qcp.size(); ++i) qcp[i] = q.coeff_of_power(2, static_cast<uint32_t>(i));

    std::vector<Rat> xs(points), ys(points);
    for (size_t k = 0; k < points; ++k) {
        long long a = static_cast<long long>(k) - static_cast<long long>(points / 2);
        xs[k] = Rat(a);
        std::vector<Rat> pt = {xs[k], Rat(1), Rat(0)};
        std::vector<Rat> pc(pcp.size()), qc(qcp.size());
        for (size_t i = 0; i < pcp.size(); ++i) pc[i] = pcp[i].eval(pt);
        for (size_t i = 0; i < qcp.size(); ++i) qc[i] = qcp[i].eval(pt);
        ys[k] = sylvester_scalar(pc, qc);
    }

    // Newton divided differences, then expansion into the monomial basis.
    std::vector<Rat> dd = ys;
    for (size_t lvl = 1; lvl < points; ++lvl)
        for (size_t k = points - 1; k >= lvl; --k)
            dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - lvl]);
    std::vector<Rat> out(points, Rat(0));
    for (size_t k = points; k-- > 0;) {
        // out = out * (x - xs[k]) + dd[k]
        for (size_t i = points - 1; i >= 1; --i) out[i] = out[i - 1] - out[i] * xs[k];
        out[0] = dd[k] - out[0] * xs[k];
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

/// Roots in Q of a dense rational polynomial (ascending coefficients),
/// found by the divisor test after integer scaling; falls back to a bounded
/// candidate scan when the scaled coefficients are too large to factor.
std::vector<Rat> rational_roots(const std::vector<Rat>& poly);

/// Result of scanning a ternary form for singular points.
struct SingScan {
    bool decided = false;  // a sound conclusion was reached
    bool smooth = false;   // decided && no singular point exists
    std::string witness;   // description of a confirmed singular direction
};

/// Decides emptiness of the common zero locus of the three partials of a
/// ternary form F(u0,u1,u2) over Q. Pass is sound: after a coordinate
/// change whose partials have unit leading u2-coefficients, every singular
/// point induces a common root of the two elimination resultants, so a
/// trivial gcd certifies smoothness. Fail is sound: a direction where the
/// three univariate slices share a root exhibits a singular point. When a
/// gcd root exists but cannot be confirmed rationally the chart is redrawn;
/// irrational coincidences of distinct fibers die under generic changes.
inline SingScan scan_singular_ternary(const MPoly& f, SeededRng& rng, int attempts = 8) {
    SingScan out;
    int deg = f.total_degree();
    if (deg < 1) throw std::invalid_argument("scan_singular_ternary: constant input");
    for (int attempt = 0; attempt < attempts; ++attempt) {
        // The original coordinates are usually generic enough; random
        // changes (which inflate the coefficients) only back them up.
        auto m = (attempt == 0) ? identity3() : random_gl3(rng);
        MPoly g = (attempt == 0) ? f : apply_linear(f, m);
        std::array<MPoly, 3> d = {g.derivative(0), g.derivative(1), g.derivative(2)};
        bool leading_ok = true;
        for (const auto& p : d) {
            Mono pure(3, 0);
            pure[2] = static_cast<uint32_t>(deg - 1);
            if (p.coeff(pure).is_zero()) leading_ok = false;
        }
        if (!leading_ok) continue;
        size_t full = static_cast<size_t>(deg - 1) * static_cast<size_t>(deg - 1);
        std::vector<Rat> r01 = resultant_u2_dehom(d[0], d[1]);
        std::vector<Rat> r02 = resultant_u2_dehom(d[0], d[2]);
        if (r01.empty() || r02.empty()) continue;
        std::vector<Rat> g12 = dense_gcd(r01, r02);
        bool inf_root = (r01.size() - 1 < full) && (r02.size() - 1 < full);
        size_t gdeg = g12.empty() ? 0 : g12.size() - 1;
        if (gdeg == 0 && !inf_root) {
            out.decided = true;
            out.smooth = true;
            return out;
        }
        std::vector<std::pair<Rat, Rat>> candidates;
        if (inf_root) candidates.emplace_back(Rat(1), Rat(0));
        for (const Rat& r : rational_roots(g12)) candidates.emplace_back(r, Rat(1));
        for (const auto& [a, b] : candidates) {
            auto h = dense_gcd3(slice_u2(d[0], a, b), slice_u2(d[1], a, b), slice_u2(d[2], a, b));
            if (h.size() > 1) {
                out.decided = true;
                out.smooth = false;
                out.witness = "singular point above chart direction (" + a.to_string() + ":" +
                              b.to_string() + "), fiber gcd degree " + std::to_string(h.size() - 1);
                return out;
            }
        }
    }
    out.decided = false;
    out.witness = "elimination inconclusive after chart retries";
    return out;
}

}  // namespace surfcheck::elim
