#include "surfcheck/models.hpp"

namespace surfcheck {

namespace {

const std::vector<std::string> kProjNames = {"z0", "z1", "z2", "z3"};
const std::vector<std::string> kLambdaNames = {"l0", "l1", "l2", "l3"};
const std::vector<std::string> kChartNames = {"x", "y", "z"};

std::vector<std::string> with_lambda(std::vector<std::string> base) {
    for (const auto& n : kLambdaNames) base.push_back(n);
    return base;
}

}  // namespace

VarCtxPtr octic_context(bool symbolic) {
    static VarCtxPtr plain = make_context(kProjNames);
    static VarCtxPtr sym = make_context(with_lambda(kProjNames));
    return symbolic ? sym : plain;
}

VarCtxPtr chart_context(bool symbolic) {
    static VarCtxPtr plain = make_context(kChartNames);
    static VarCtxPtr sym = make_context(with_lambda(kChartNames));
    return symbolic ? sym : plain;
}

MPoly build_octic(const OcticParams& params, bool symbolic) {
    VarCtxPtr ctx = octic_context(symbolic);
    std::array<MPoly, 4> Z, L;
    for (int i = 0; i < 4; ++i) {
        Z[i] = MPoly::variable(ctx, static_cast<size_t>(i));
        L[i] = symbolic ? MPoly::variable(ctx, static_cast<size_t>(4 + i))
                        : MPoly::constant(ctx, params.lambda(i));
    }
    auto p2 = [](const MPoly& p) { return p.pow(2); };
    auto p4 = [](const MPoly& p) { return p.pow(4); };
    MPoly two = MPoly::constant(ctx, Rat(2));

    MPoly q = p2(L[1]) * (p4(Z[0]) * p4(Z[1]) + p4(Z[2]) * p4(Z[3]))
            + p2(L[2]) * (p4(Z[0]) * p4(Z[2]) + p4(Z[1]) * p4(Z[3]))
            + p2(L[3]) * (p4(Z[0]) * p4(Z[3]) + p4(Z[1]) * p4(Z[2]));
    q += two * L[1] * L[2] * (p2(Z[0]) * p2(Z[1]) + p2(Z[2]) * p2(Z[3]))
             * (-(p2(Z[0]) * p2(Z[2])) + p2(Z[1]) * p2(Z[3]));
    q += two * L[1] * L[3] * (p2(Z[0]) * p2(Z[1]) - p2(Z[2]) * p2(Z[3]))
             * (p2(Z[0]) * p2(Z[3]) - p2(Z[1]) * p2(Z[2]));
    q += two * L[2] * L[3] * (p2(Z[0]) * p2(Z[2]) + p2(Z[1]) * p2(Z[3]))
             * (p2(Z[0]) * p2(Z[3]) + p2(Z[1]) * p2(Z[2]));
    q += p2(L[0]) * p2(Z[0]) * p2(Z[1]) * p2(Z[2]) * p2(Z[3]);
    return q;
}

MPoly chart_at_vertex(const MPoly& p, int j) {
    if (j < 0 || j > 3) throw std::out_of_range("chart_at_vertex: vertex index");
    const VarCtxPtr& src = p.ctx();
    bool symbolic = src->arity() == 8;
    if (!same_context(src, octic_context(symbolic)))
        throw std::invalid_argument("chart_at_vertex: polynomial is not in the octic context");
    VarCtxPtr target = chart_context(symbolic);
    std::vector<MPoly> images;
    images.reserve(src->arity());
    size_t chart_pos = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == j) {
            images.push_back(MPoly::constant(target, Rat(1)));
        } else {
            images.push_back(MPoly::variable(target, chart_pos++));
        }
    }
    if (symbolic)
        for (size_t i = 0; i < 4; ++i) images.push_back(MPoly::variable(target, 3 + i));
    return p.substitute(target, images);
}

DoubleCurve double_curve(const OcticParams& params, int j, bool symbolic) {
    if (j < 0 || j > 3) throw std::out_of_range("double_curve: plane index");
    MPoly q = build_octic(params, symbolic);
    MPoly restricted = q.set_var(static_cast<size_t>(j), Rat(0));
    std::vector<std::string> names;
    for (int i = 0; i < 4; ++i)
        if (i != j) names.push_back(kProjNames[static_cast<size_t>(i)]);
    VarCtxPtr hctx = make_context(symbolic ? with_lambda(names) : names);
    MPoly in_plane = restricted.rename(hctx);
    auto root = in_plane.sqrt_homogeneous();
    if (!root)
        throw std::logic_error("double_curve: restriction of Q to the plane is not a perfect square");
    // sqrt_homogeneous already returns the root whose leading grlex
    // coefficient is the principal (positive) square root.
    DoubleCurve dc;
    dc.plane_index = j;
    dc.ctx = hctx;
    dc.quartic = *root;
    dc.nodes = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
    return dc;
}

std::array<std::pair<int, int>, 3> effective_lambda_roles(int j) {
    // The automorphisms of Q carrying p_0 to p_j permute the chart roles of
    // (lambda1, lambda2, lambda3) and flip signs (the maps to p_2, p_3
    // involve a factor i on two coordinates).
    switch (j) {
        case 0: return {{{1, +1}, {2, +1}, {3, +1}}};
        case 1: return {{{1, +1}, {3, +1}, {2, +1}}};
        case 2: return {{{2, +1}, {3, -1}, {1, -1}}};
        case 3: return {{{3, +1}, {2, -1}, {1, -1}}};
    }
    throw std::out_of_range("effective_lambda_roles: vertex index");
}

std::array<Rat, 3> effective_lambda(const OcticParams& params, int j) {
    auto roles = effective_lambda_roles(j);
    std::array<Rat, 3> out;
    for (int k = 0; k < 3; ++k) {
        Rat v = params.lambda(roles[static_cast<size_t>(k)].first);
        out[static_cast<size_t>(k)] = roles[static_cast<size_t>(k)].second > 0 ? v : -v;
    }
    return out;
}

std::optional<std::array<GaussRat, 3>> vertex_frame(const OcticParams& params, int j) {
    auto lam = effective_lambda(params, j);
    auto m1 = GaussRat(lam[0]).sqrt();
    auto m2 = GaussRat(lam[1]).sqrt();
    auto m3 = GaussRat(-lam[2]).sqrt();
    if (!m1 || !m2 || !m3) return std::nullopt;
    return std::array<GaussRat, 3>{*m1, *m2, *m3};
}

VertexCone tangent_cone_data(const OcticParams& params, int j) {
    auto mu = vertex_frame(params, j);
    if (!mu)
        throw std::invalid_argument(
            "tangent_cone_data: effective lambda at this vertex has no square roots in Q(i)");
    const GaussRat& m1 = (*mu)[0];
    const GaussRat& m2 = (*mu)[1];
    const GaussRat& m3 = (*mu)[2];
    VertexCone vc;
    vc.vertex = j;
    vc.mu = *mu;
    vc.planes = {GLinForm({m1, m2, m3}), GLinForm({m1, m2, -m3}),
                 GLinForm({m1, -m2, m3}), GLinForm({m1, -m2, -m3})};
    GaussRat zero;
    vc.lines = {GLineGerm({zero, m3, m2}), GLineGerm({zero, m3, -m2}),
                GLineGerm({m3, zero, m1}), GLineGerm({m3, zero, -m1}),
                GLineGerm({m2, m1, zero}), GLineGerm({m2, -m1, zero})};
    return vc;
}

std::vector<CurveGerm> curve_branch_germs(const OcticParams& params, int j, uint32_t order) {
    if (order < 4) throw std::invalid_argument("curve_branch_germs: order must be >= 4");
    VarCtxPtr tctx = make_context({"t"});
    GSeries t_series = GSeries::from_poly(GPoly::variable(tctx, 0), order);
    GSeries zero_series(tctx, order);

    std::vector<CurveGerm> out;
    for (int k = 0; k < 4; ++k) {
        if (k == j) continue;
        DoubleCurve dc = double_curve(params, k, false);
        // Bring the quartic into the chart at p_j (it does not involve z_k,
        // so the chart image lives in the two remaining variables).
        MPoly full = dc.quartic.rename(octic_context(false));
        MPoly chart = chart_at_vertex(full, j);
        GPoly q = to_gauss(chart);

        // Chart variable positions of z_k and of the two active coordinates.
        auto chart_slot = [&](int zi) {
            int pos = 0;
            for (int i = 0; i < 4; ++i) {
                if (i == j) continue;
                if (i == zi) return pos;
                ++pos;
            }
            throw std::logic_error("curve_branch_germs: slot lookup");
        };
        size_t wu = 0, wv = 0;
        {
            std::vector<size_t> active;
            for (int i = 0; i < 4; ++i)
                if (i != j && i != k) active.push_back(static_cast<size_t>(chart_slot(i)));
            wu = active[0];
            wv = active[1];
        }
        size_t wk = static_cast<size_t>(chart_slot(k));

        // The restricted quartic always has the shape A u^2 + B v^2 + C u^2 v^2.
        auto mono = [&](uint32_t eu, uint32_t ev) {
            Mono m(3, 0);
            m[wu] = eu;
            m[wv] = ev;
            return m;
        };
        GaussRat A = q.coeff(mono(2, 0));
        GaussRat B = q.coeff(mono(0, 2));
        GaussRat C = q.coeff(mono(2, 2));
        GPoly expect = GPoly::monomial(q.ctx(), mono(2, 0), A) + GPoly::monomial(q.ctx(), mono(0, 2), B)
                     + GPoly::monomial(q.ctx(), mono(2, 2), C);
        if (q != expect)
            throw SeriesError("curve_branch_germs: restricted quartic has an unexpected shape");
        if (B.is_zero())
            throw SeriesError("curve_branch_germs: degenerate lambda (no graph over the chart line)");
        auto s = (-(A / B)).sqrt();
        if (!s)
            throw SeriesError("curve_branch_germs: branch slope is not in Q(i)");
        GaussRat slope = *s;
        if (FieldOps<GaussRat>::print_negative(slope)) slope = -slope;
        if (slope.is_zero()) throw SeriesError("curve_branch_germs: tangent line degenerates");

        // v(t) = slope * t * (1 + (C/B) t^2)^(-1/2), u(t) = t, z_k-coord = 0.
        GPoly tsq = GPoly::monomial(tctx, Mono{2}, C / B);
        GSeries unit = GSeries::constant(tctx, order, GaussRat(1)) + GSeries::from_poly(tsq, order);
        GSeries inv_root = unit.sqrt_unit().inverse();
        GSeries v_plus = (t_series * inv_root) * slope;

        for (int sign = 0; sign < 2; ++sign) {
            CurveGerm germ;
            germ.owner = k;
            germ.components = {zero_series, zero_series, zero_series};
            germ.tangent = {GaussRat(), GaussRat(), GaussRat()};
            germ.components[wu] = t_series;
            germ.tangent[wu] = GaussRat(1);
            germ.components[wv] = sign == 0 ? v_plus : -v_plus;
            germ.tangent[wv] = sign == 0 ? slope : -slope;
            germ.components[wk] = zero_series;
            out.push_back(std::move(germ));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

SeededRng::SeededRng(uint64_t seed, uint64_t stream)
    : state_(seed + 0x9e3779b97f4a7c15ULL * (stream + 1)) {
    next();
}

uint64_t SeededRng::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long long SeededRng::next_int(long long lo, long long hi) {
    if (hi < lo) throw std::invalid_argument("SeededRng: empty range");
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next() % span);
}

Arrangement build_arrangement(size_t count, uint64_t seed) {
    if (count < 4) throw std::invalid_argument("build_arrangement: need at least 4 planes");
    SeededRng rng(seed, 0);
    Arrangement arr;
    arr.seed = seed;
    arr.provenance = "seeded";
    size_t draws = 0;
    while (arr.forms.size() < count) {
        if (++draws > 1000)
            throw std::runtime_error("build_arrangement: exceeded 1000 draws (generator problem)");
        std::vector<Rat> c(4);
        bool all_zero = true;
        for (auto& v : c) {
            v = Rat(rng.next_int(-9, 9));
            if (!v.is_zero()) all_zero = false;
        }
        if (all_zero) continue;
        LinForm cand(c);
        bool ok = true;
        for (const auto& f : arr.forms)
            if (f == cand) ok = false;
        if (!ok) continue;
        // Any 3 existing forms plus the candidate must stay independent.
        const auto& fs = arr.forms;
        size_t n = fs.size();
        for (size_t a = 0; a < n && ok; ++a)
            for (size_t b = a + 1; b < n && ok; ++b)
                for (size_t d = b + 1; d < n && ok; ++d) {
                    std::vector<std::vector<Rat>> m = {fs[a].coef, fs[b].coef, fs[d].coef, cand.coef};
                    if (determinant(m).is_zero()) ok = false;
                }
        if (ok) arr.forms.push_back(std::move(cand));
    }
    return arr;
}

namespace {

void enum_monos(size_t arity, uint32_t degree, Mono& cur, size_t pos, std::vector<Mono>& out) {
    if (pos + 1 == arity) {
        cur[pos] = degree;
        out.push_back(cur);
        return;
    }
    for (uint32_t e = degree; e + 1 != 0; --e) {
        cur[pos] = e;
        enum_monos(arity, degree - e, cur, pos + 1, out);
    }
}

}  // namespace

MPoly random_homogeneous(const VarCtxPtr& ctx, uint32_t degree, uint64_t seed, uint64_t stream) {
    std::vector<Mono> monos;
    Mono cur(ctx->arity(), 0);
    enum_monos(ctx->arity(), degree, cur, 0, monos);
    SeededRng rng(seed, stream);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        MPoly p(ctx);
        for (const auto& m : monos) {
            Rat c(rng.next_int(-9, 9));
            if (!c.is_zero()) p += MPoly::monomial(ctx, m, c);
        }
        if (!p.is_zero()) return p;
    }
    throw std::runtime_error("random_homogeneous: generator produced only zero polynomials");
}

Pencil build_pencil_planes(const Arrangement& arr, const MPoly& quintic) {
    VarCtxPtr ctx = octic_context(false);
    if (!same_context(quintic.ctx(), ctx))
        throw std::invalid_argument("build_pencil_planes: quintic must be in the z0..z3 context");
    if (!quintic.is_homogeneous() || quintic.total_degree() <= 0)
        throw std::invalid_argument("build_pencil_planes: companion must be homogeneous of positive degree");
    uint32_t qd = static_cast<uint32_t>(quintic.total_degree());
    if (arr.forms.size() != 3 * static_cast<size_t>(qd))
        throw std::invalid_argument("build_pencil_planes: degree mismatch (need plane count = 3 * deg)");
    MPoly base = MPoly::constant(ctx, Rat(1));
    for (const auto& f : arr.forms) {
        MPolyT<Rat> lin(ctx);
        for (size_t i = 0; i < 4; ++i)
            if (!f.coef[i].is_zero()) lin += MPoly::variable(ctx, i) * f.coef[i];
        base *= lin;
    }
    Pencil p;
    p.base = std::move(base);
    p.deformer = quintic;
    p.exponent = 3;
    p.tag = "planes" + std::to_string(arr.forms.size());
    return p;
}

Pencil build_pencil_octic(const OcticParams& params, const MPoly& deformer) {
    VarCtxPtr ctx = octic_context(false);
    if (!same_context(deformer.ctx(), ctx))
        throw std::invalid_argument("build_pencil_octic: deformer must be in the z0..z3 context");
    if (!deformer.is_homogeneous() || deformer.total_degree() != 8)
        throw std::invalid_argument("build_pencil_octic: deformer must be homogeneous of degree 8");
    for (int j = 0; j < 4; ++j) {
        std::vector<Rat> pt(4, Rat(0));
        pt[static_cast<size_t>(j)] = Rat(1);
        if (deformer.eval(pt).is_zero())
            throw std::invalid_argument("build_pencil_octic: deformer vanishes at vertex p" +
                                        std::to_string(j));
    }
    Pencil p;
    p.base = build_octic(params, false);
    p.deformer = deformer;
    p.exponent = 1;
    p.tag = "octic";
    return p;
}

}  // namespace surfcheck
