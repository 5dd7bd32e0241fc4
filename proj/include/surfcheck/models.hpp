#pragma once

#include <array>
#include <cstdint>

#include "surfcheck/tseries.hpp"

namespace surfcheck {

/// Parameters (lambda0..lambda3) of the octic surface.
struct OcticParams {
    Rat lambda0, lambda1, lambda2, lambda3;

    OcticParams(Rat l0, Rat l1, Rat l2, Rat l3)
        : lambda0(std::move(l0)), lambda1(std::move(l1)), lambda2(std::move(l2)), lambda3(std::move(l3)) {
        if (lambda1.is_zero() || lambda2.is_zero() || lambda3.is_zero())
            throw std::invalid_argument("OcticParams: lambda1, lambda2, lambda3 must be nonzero");
    }

    static OcticParams defaults() { return OcticParams(Rat(1), Rat(1), Rat(4), Rat(-9)); }
    static OcticParams alternate() { return OcticParams(Rat(1), Rat(4), Rat(9), Rat(-1)); }

    const Rat& lambda(int i) const {
        switch (i) {
            case 0: return lambda0;
            case 1: return lambda1;
            case 2: return lambda2;
            case 3: return lambda3;
        }
        throw std::out_of_range("OcticParams: lambda index");
    }
};

/// Rational square roots mu1 = sqrt(lambda1), mu2 = sqrt(lambda2),
/// mu3 = sqrt(-lambda3), when they exist (the frame at the first vertex).
struct TangentFrame {
    Rat mu1, mu2, mu3;

    static std::optional<TangentFrame> derive(const OcticParams& p) {
        auto m1 = p.lambda1.sqrt();
        auto m2 = p.lambda2.sqrt();
        auto m3 = (-p.lambda3).sqrt();
        if (!m1 || !m2 || !m3) return std::nullopt;
        return TangentFrame{*m1, *m2, *m3};
    }

    bool consistent_with(const OcticParams& p) const {
        return mu1 * mu1 == p.lambda1 && mu2 * mu2 == p.lambda2 && mu3 * mu3 == -p.lambda3;
    }
};

/// A nonzero linear form, normalized so its first nonzero coefficient is 1.
template <class K>
struct LinFormT {
    std::vector<K> coef;

    LinFormT() = default;
    explicit LinFormT(std::vector<K> c) : coef(std::move(c)) { normalize(); }

    void normalize() {
        for (const K& v : coef) {
            if (!v.is_zero()) {
                K inv = FieldOps<K>::one() / v;
                for (K& w : coef) w = w * inv;
                return;
            }
        }
        throw std::invalid_argument("LinForm: zero form");
    }

    K eval(const std::vector<K>& point) const {
        K acc = FieldOps<K>::zero();
        for (size_t i = 0; i < coef.size(); ++i) acc += coef[i] * point[i];
        return acc;
    }

    MPolyT<K> to_poly(const VarCtxPtr& ctx) const {
        if (ctx->arity() != coef.size()) throw std::invalid_argument("LinForm: arity mismatch");
        MPolyT<K> p(ctx);
        for (size_t i = 0; i < coef.size(); ++i)
            if (!coef[i].is_zero()) p += MPolyT<K>::variable(ctx, i) * coef[i];
        return p;
    }

    bool operator==(const LinFormT& o) const { return coef == o.coef; }

    std::string to_string() const {
        std::string s;
        for (size_t i = 0; i < coef.size(); ++i) {
            if (i) s += ",";
            s += FieldOps<K>::to_coef_string(coef[i]);
        }
        return s;
    }
};

using LinForm = LinFormT<Rat>;
using GLinForm = LinFormT<GaussRat>;

/// Direction of a line through the origin of a vertex chart, normalized
/// like a LinForm.
template <class K>
struct LineGermT {
    std::vector<K> direction;

    LineGermT() = default;
    explicit LineGermT(std::vector<K> d) : direction(std::move(d)) {
        LinFormT<K> n(direction);
        direction = n.coef;
    }

    bool operator==(const LineGermT& o) const { return direction == o.direction; }
};

using GLineGerm = LineGermT<GaussRat>;

/// The double curve in the coordinate plane H_j: the quartic C_j over the
/// 3 remaining projective coordinates, with Q|_{z_j=0} = C_j^2, plus its
/// node locations (the coordinate vertices of H_j).
struct DoubleCurve {
    int plane_index = -1;
    VarCtxPtr ctx;        // 3 variables: the z_i, i != j, in index order
    MPoly quartic;        // sign-normalized: leading grlex term positive
    std::vector<std::array<Rat, 3>> nodes;
};

/// Tangent data of the octic at one vertex: the effective frame mu', the
/// 4 tangent-cone planes P^{++},P^{+-},P^{-+},P^{--} and the 6 tangent
/// lines l_1^+,l_1^-,l_2^+,l_2^-,l_3^+,l_3^-, all in the vertex chart
/// coordinates (x,y,z). Frames at vertices 1 and 3 are genuinely complex
/// for real lambda, hence the Gaussian-rational coefficients.
struct VertexCone {
    int vertex = -1;
    std::array<GaussRat, 3> mu;
    std::array<GLinForm, 4> planes;
    std::array<GLineGerm, 6> lines;
};

/// A smooth local branch of one double curve at a vertex, parametrized by t.
struct CurveGerm {
    int owner;                          // index of the double curve S_k
    std::array<GSeries, 3> components;  // chart coordinates (x,y,z) as series in t
    std::array<GaussRat, 3> tangent;    // derivative at t=0
};

/// A list of hyperplanes in P^3 plus how it was produced.
struct Arrangement {
    std::vector<LinForm> forms;
    uint64_t seed = 0;
    std::string provenance;
};

/// A one-parameter family base + t * deformer^exponent.
struct Pencil {
    MPoly base;
    MPoly deformer;
    uint32_t exponent = 1;
    std::string tag;
};

// ---------------------------------------------------------------------------
// Deterministic seeded generator (counter-based, splittable by stream id).

class SeededRng {
public:
    SeededRng(uint64_t seed, uint64_t stream = 0);
    uint64_t next();
    /// Uniform-ish integer in [lo, hi] (modulo reduction; the tiny bias is
    /// irrelevant for drawing small certified-after-the-fact coefficients).
    long long next_int(long long lo, long long hi);

private:
    uint64_t state_;
};

// ---------------------------------------------------------------------------
// Construction operations.

/// Context of the projective coordinates, optionally extended by the
/// symbolic parameters l0..l3.
VarCtxPtr octic_context(bool symbolic);

/// Chart context (x,y,z), optionally extended by l0..l3.
VarCtxPtr chart_context(bool symbolic);

/// The degree-8 surface equation. In symbolic mode the lambda are the
/// context variables l0..l3; otherwise they are the given rationals.
MPoly build_octic(const OcticParams& params, bool symbolic);

/// Affine chart of a polynomial at the vertex p_j: z_j = 1 and the
/// remaining coordinates become (x,y,z) in index order. Works for both the
/// symbolic and the specialized octic context.
MPoly chart_at_vertex(const MPoly& p, int j);

/// The double curve quartic; symbolic flag as in build_octic.
DoubleCurve double_curve(const OcticParams& params, int j, bool symbolic = false);

/// The role the global lambda parameters play in the chart at vertex j:
/// returns (index, sign) pairs such that the local analysis at p_j uses
/// lambda'_k = sign_k * lambda_{index_k}. At p_0 this is the identity
/// (lambda1, lambda2, lambda3); the automorphisms carrying p_0 to the other
/// vertices permute the roles and flip signs.
std::array<std::pair<int, int>, 3> effective_lambda_roles(int j);

/// Effective lambda triple at vertex j as rationals.
std::array<Rat, 3> effective_lambda(const OcticParams& params, int j);

/// The frame mu' = (sqrt l'1, sqrt l'2, sqrt(-l'3)) at vertex j over Q(i);
/// nullopt when some root does not exist even in Q(i).
std::optional<std::array<GaussRat, 3>> vertex_frame(const OcticParams& params, int j);

/// Tangent-cone planes and tangent lines at vertex j.
VertexCone tangent_cone_data(const OcticParams& params, int j);

/// The 6 smooth curve branches of the double curves through vertex j,
/// two per incident curve, as t-parametrized series of the given order.
std::vector<CurveGerm> curve_branch_germs(const OcticParams& params, int j, uint32_t order);

/// Seeded arrangement of `count` planes, redrawn until every 4-subset is
/// independent. Throws after 1000 draws (a generator bug, not bad luck).
Arrangement build_arrangement(size_t count, uint64_t seed);

/// Seeded homogeneous polynomial with coefficients in {-9..9}; `stream`
/// selects an independent draw for the same seed.
MPoly random_homogeneous(const VarCtxPtr& ctx, uint32_t degree, uint64_t seed, uint64_t stream);

/// The 15-planes pencil prod L_j + t * quintic^3.
Pencil build_pencil_planes(const Arrangement& arr, const MPoly& quintic);

/// The octic pencil Q + t * F; F must be degree 8 and nonzero at all four
/// vertices.
Pencil build_pencil_octic(const OcticParams& params, const MPoly& deformer);

}  // namespace surfcheck
