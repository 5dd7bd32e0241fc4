#include "surfcheck/checks.hpp"

#include <chrono>

#include "elim_util.hpp"

namespace surfcheck {

namespace {

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    long long ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

CheckResult finish(CheckResult r, const Timer& t) {
    r.duration_ms = t.ms();
    return r;
}

std::string point_str(const std::vector<Rat>& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ":";
        s += p[i].to_string();
    }
    return s + ")";
}

}  // namespace

namespace elim {

std::vector<Rat> rational_roots(const std::vector<Rat>& poly) {
    std::vector<Rat> roots;
    if (poly.size() < 2) return roots;
    // Scale to integer coefficients.
    BigInt lcm(1);
    for (const Rat& c : poly) {
        BigInt g = BigInt::gcd(lcm, c.den());
        lcm = lcm / g * c.den();
    }
    std::vector<BigInt> ic;
    ic.reserve(poly.size());
    for (const Rat& c : poly) ic.push_back(c.num() * (lcm / c.den()));
    size_t low = 0;
    while (low < ic.size() && ic[low].is_zero()) ++low;
    if (low > 0) roots.push_back(Rat(0));
    if (low + 1 >= ic.size()) return roots;
    BigInt trailing = ic[low];
    BigInt leading = ic.back();

    auto divisors = [](const BigInt& n) {
        std::vector<long long> out;
        if (!n.fits_int64()) return out;  // caller falls back to a bounded scan
        long long v = n.to_int64();
        if (v < 0) v = -v;
        for (long long d = 1; d * d <= v; ++d) {
            if (v % d == 0) {
                out.push_back(d);
                out.push_back(v / d);
            }
        }
        return out;
    };
    std::vector<long long> ps = divisors(trailing);
    std::vector<long long> qs = divisors(leading);
    if (ps.empty() || qs.empty()) {
        // Bounded fallback for astronomically large coefficients.
        ps.clear();
        qs.clear();
        for (long long v = 1; v <= 40; ++v) {
            ps.push_back(v);
            qs.push_back(v);
        }
    }
    auto eval = [&poly](const Rat& x) {
        Rat acc(0);
        for (size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
        return acc;
    };
    for (long long p : ps) {
        for (long long q : qs) {
            for (int sign = 0; sign < 2; ++sign) {
                Rat cand(BigInt(sign ? -p : p), BigInt(q));
                bool seen = false;
                for (const Rat& r : roots)
                    if (r == cand) seen = true;
                if (!seen && eval(cand).is_zero()) roots.push_back(cand);
            }
        }
    }
    return roots;
}

}  // namespace elim

// ---------------------------------------------------------------------------

CheckResult check_general_position(const Arrangement& arr) {
    Timer t;
    CheckResult r;
    r.id = "planes.general_position";
    size_t n = arr.forms.size();
    if (n < 4) {
        r.status = CheckResult::Status::fail;
        r.notes = "fewer than 4 forms";
        return finish(std::move(r), t);
    }
    size_t checked = 0;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c)
                for (size_t d = c + 1; d < n; ++d) {
                    std::vector<std::vector<Rat>> m = {arr.forms[a].coef, arr.forms[b].coef,
                                                       arr.forms[c].coef, arr.forms[d].coef};
                    ++checked;
                    if (determinant(m).is_zero()) {
                        r.status = CheckResult::Status::fail;
                        r.witnesses.emplace_back("degenerate_quadruple",
                                                 std::to_string(a) + "," + std::to_string(b) + "," +
                                                     std::to_string(c) + "," + std::to_string(d));
                        r.witnesses.emplace_back("determinant", "0");
                        return finish(std::move(r), t);
                    }
                }
    r.status = CheckResult::Status::pass;
    r.notes = "all " + std::to_string(checked) + " quadruples independent";
    return finish(std::move(r), t);
}

namespace {

/// The intersection point of three independent forms, via signed 3x3 minors.
std::vector<Rat> triple_point(const LinForm& f0, const LinForm& f1, const LinForm& f2) {
    const std::array<const std::vector<Rat>*, 3> rows = {&f0.coef, &f1.coef, &f2.coef};
    std::vector<Rat> p(4, Rat(0));
    for (int skip = 0; skip < 4; ++skip) {
        std::vector<std::vector<Rat>> m(3, std::vector<Rat>(3));
        for (int i = 0; i < 3; ++i) {
            int cc = 0;
            for (int j = 0; j < 4; ++j) {
                if (j == skip) continue;
                m[static_cast<size_t>(i)][static_cast<size_t>(cc++)] = (*rows[static_cast<size_t>(i)])[static_cast<size_t>(j)];
            }
        }
        Rat d = determinant(m);
        p[static_cast<size_t>(skip)] = (skip % 2 == 0) ? d : -d;
    }
    return p;
}

bool all_zero(const std::vector<Rat>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace

CheckResult check_divisor_avoids_triple_points(const MPoly& divisor, const Arrangement& arr) {
    Timer t;
    CheckResult r;
    r.id = "planes.triple_points";
    size_t n = arr.forms.size();
    size_t count = 0;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c) {
                std::vector<Rat> p = triple_point(arr.forms[a], arr.forms[b], arr.forms[c]);
                if (all_zero(p))
                    throw std::invalid_argument(
                        "check_divisor_avoids_triple_points: degenerate triple (arrangement not in "
                        "general position)");
                ++count;
                if (divisor.eval(p).is_zero()) {
                    r.status = CheckResult::Status::fail;
                    r.witnesses.emplace_back("planes", std::to_string(a) + "," + std::to_string(b) +
                                                           "," + std::to_string(c));
                    r.witnesses.emplace_back("point", point_str(p));
                    return finish(std::move(r), t);
                }
            }
    r.status = CheckResult::Status::pass;
    r.notes = "divisor nonzero at all " + std::to_string(count) + " triple points";
    return finish(std::move(r), t);
}

namespace {

/// Restriction of a form in z0..z3 to a plane, as a ternary form in a
/// rational basis of the plane.
MPoly restrict_to_plane(const MPoly& f, const LinForm& plane, const VarCtxPtr& uctx) {
    size_t pivot = 0;
    while (pivot < 4 && plane.coef[pivot].is_zero()) ++pivot;
    // Basis vectors e_i - c_i e_pivot for i != pivot (c_pivot = 1).
    std::vector<MPoly> images(4, MPoly(uctx));
    size_t upos = 0;
    for (size_t i = 0; i < 4; ++i) {
        if (i == pivot) continue;
        MPoly u = MPoly::variable(uctx, upos++);
        images[i] += u;
        images[pivot] -= u * plane.coef[i];
    }
    return f.substitute(uctx, images);
}

}  // namespace

CheckResult check_quintic_sections(const MPoly& divisor, const Arrangement& arr, uint64_t seed) {
    Timer t;
    CheckResult r;
    r.id = "planes.smooth_sections";
    VarCtxPtr uctx = make_context({"u0", "u1", "u2"});
    SeededRng rng(seed, 7);
    for (size_t j = 0; j < arr.forms.size(); ++j) {
        MPoly section = restrict_to_plane(divisor, arr.forms[j], uctx);
        if (section.is_zero() || section.total_degree() != divisor.total_degree()) {
            r.status = CheckResult::Status::fail;
            r.witnesses.emplace_back("plane", std::to_string(j));
            r.notes = "divisor restricts degenerately to the plane";
            return finish(std::move(r), t);
        }
        elim::SingScan scan = elim::scan_singular_ternary(section, rng);
        if (!scan.decided || !scan.smooth) {
            r.status = CheckResult::Status::fail;
            r.witnesses.emplace_back("plane", std::to_string(j));
            r.witnesses.emplace_back("detail", scan.witness.empty() ? "singular section" : scan.witness);
            return finish(std::move(r), t);
        }
    }
    r.status = CheckResult::Status::pass;
    r.notes = "all " + std::to_string(arr.forms.size()) + " sections smooth";
    return finish(std::move(r), t);
}

MPoly certified_companion(const Arrangement& arr, uint32_t degree, uint64_t seed, int max_attempts) {
    VarCtxPtr ctx = octic_context(false);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        MPoly q = random_homogeneous(ctx, degree, seed, 100 + static_cast<uint64_t>(attempt));
        CheckResult tp = check_divisor_avoids_triple_points(q, arr);
        if (!tp.passed()) continue;
        CheckResult sm = check_quintic_sections(q, arr, seed);
        if (!sm.passed()) continue;
        return q;
    }
    throw std::runtime_error("certified_companion: no certified divisor found");
}

std::pair<int, bool> non_percolation_margin(const PercolationParams& p) {
    if (p.n_lines <= 0 || p.truncation < 0 || p.divisor_degree <= 0)
        throw std::invalid_argument("non_percolation_margin: parameters must be positive");
    int margin = (p.n_lines - 3) - p.truncation * p.divisor_degree;
    return {margin, margin > 0};
}

CheckResult check_pencil_vertices(const OcticParams& params, const MPoly& deformer) {
    Timer t;
    CheckResult r;
    r.id = "octic.pencil_vertices";
    try {
        Pencil p = build_pencil_octic(params, deformer);
        r.status = CheckResult::Status::pass;
        r.notes = "deformer of degree 8, nonzero at all 4 vertices (" + p.tag + " pencil)";
    } catch (const std::invalid_argument& e) {
        r.status = CheckResult::Status::fail;
        r.witnesses.emplace_back("error", e.what());
    }
    return finish(std::move(r), t);
}

}  // namespace surfcheck
