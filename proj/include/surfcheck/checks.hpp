#pragma once

#include "surfcheck/models.hpp"

namespace surfcheck {

struct CheckResult {
    enum class Status { pass, fail, skipped };

    std::string id;
    Status status = Status::skipped;
    std::vector<std::pair<std::string, std::string>> witnesses;
    long long duration_ms = 0;
    std::string notes;

    bool passed() const { return status == Status::pass; }
    static const char* status_name(Status s) {
        switch (s) {
            case Status::pass: return "pass";
            case Status::fail: return "fail";
            default: return "skipped";
        }
    }
};

/// Degree bookkeeping of the line-arrangement argument: n_lines plane
/// sections, a truncation level, and the degree of the companion divisor.
struct PercolationParams {
    int n_lines = 14;
    int truncation = 2;
    int divisor_degree = 5;
};

struct PinchCurveReport {
    int curve = -1;
    int eliminant_degree = 0;
    int distinct_common_zeros = 0;
    int node_count = 0;
    int pinch_count = 0;
};

struct PinchReport {
    std::vector<PinchCurveReport> curves;
    int total_pinch = 0;
};

struct VerifyConfig {
    OcticParams params = OcticParams::defaults();
    uint32_t order = 12;
    uint64_t seed = 42;
    size_t plane_count = 15;
    PercolationParams percolation;
    bool run_planes = true;
    bool run_octic = true;
    bool reverse_inclusion = false;  // the optional slow direction of the singular-locus equality
};

struct Report {
    VerifyConfig config;
    std::vector<CheckResult> checks;
    bool overall = false;
    std::string hash;  // FNV-1a of the canonical body (durations excluded)
};

// ---------------------------------------------------------------------------
// Plane-arrangement suite.

/// Every 4-subset of the forms must be linearly independent.
CheckResult check_general_position(const Arrangement& arr);

/// The divisor must not vanish at any triple intersection point H_i∩H_j∩H_k.
CheckResult check_divisor_avoids_triple_points(const MPoly& divisor, const Arrangement& arr);

/// Every plane section of the divisor must be a smooth plane curve.
CheckResult check_quintic_sections(const MPoly& divisor, const Arrangement& arr, uint64_t seed);

/// Draws a seeded companion divisor of the given degree and redraws until it
/// passes the triple-point and smooth-section checks.
MPoly certified_companion(const Arrangement& arr, uint32_t degree, uint64_t seed, int max_attempts = 50);

/// margin = (n_lines - 3) - truncation * divisor_degree; certified iff > 0.
/// Certification asserts only the arithmetic contradiction of the degree
/// chain, nothing analytic.
std::pair<int, bool> non_percolation_margin(const PercolationParams& p);

// ---------------------------------------------------------------------------
// Octic suite.

/// Q|_{z_j=0} = C_j^2 identically in (z, lambda) for all four planes.
CheckResult check_restriction_square();

/// Each double curve lies in the singular locus: restricted partials are
/// divisible by C_j, symbolically in lambda.
CheckResult check_singular_containment();

/// Sing(C_j) is exactly the 3 coordinate vertices, each an ordinary node;
/// the documented case analysis then yields irreducibility and rationality.
CheckResult check_double_curve_structure(const OcticParams& params, int j, uint64_t seed = 1);

/// Distinct non-node common zeros of {C_j, beta_j} per curve; expects 12
/// per curve and 48 total with eliminant degree 24.
PinchReport count_pinch_points(const OcticParams& params, uint64_t seed = 1);
CheckResult check_pinch_points(const OcticParams& params, uint64_t seed = 1);

/// The full local analysis at one vertex (tangent cone, both quartic
/// splits, branch extraction, recombination, incidence counts).
CheckResult check_vertex_structure(const OcticParams& params, int j, uint32_t order);

/// Optional: the reverse inclusion Sing(X_0) ⊆ union of the four planes,
/// by elimination at specialized lambda.
CheckResult check_reverse_inclusion(const OcticParams& params);

/// Octic pencil deformer avoids the vertices.
CheckResult check_pencil_vertices(const OcticParams& params, const MPoly& deformer);

// ---------------------------------------------------------------------------
// Orchestration and reporting.

Report verify_all(const VerifyConfig& config);

/// Canonical JSON text of a report ({"config","checks","overall","hash"}).
std::string report_to_json(const Report& report);

/// Human-readable rendering of a report JSON document.
std::string report_json_to_markdown(const std::string& json_text);

/// FNV-1a 64-bit, used for the report body hash.
uint64_t fnv1a64(std::string_view data);

}  // namespace surfcheck
