#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nneig/eigensolver.hpp"
#include "nneig/linalg.hpp"
#include "nneig/sigma_oracle.hpp"

namespace nneig {

struct ExtremeParams {
    double epsilon = 1e-3;
    double kappa = 1.0;
    int m = 1;
    SigmaOracleConfig oracle;
    double c = 0.9;  // circle-cover constant in (0, 1)
    ScanMode scan = ScanMode::automatic;
    bool normalize = false;  // divide A by ||A|| when it exceeds 1, rescale results back
    std::int64_t max_sweeps = 200000;
};

void validate(const ExtremeParams& params);

struct CircleCount {
    std::int64_t count = 1;
    bool cover_complete = false;  // sqrt(1 - c^2) delta / r1 > 1; count is 1
    // Largest radius r such that the disks cover the band r1 <= |z| <= r.
    // Slightly below r1 + c delta: the count formula neglects r1 (1 - cos(pi / count)).
    double covered_radius = 0.0;
};

/// ceil(pi / asin(sqrt(1 - c^2) delta / r1)) radius-delta disks centred on
/// the circle |z| = r1.
CircleCount circle_count(double r1, double delta, double c);

/// Outer radius of the band around |z| = r1 covered by `count` equally spaced
/// disks of radius delta centred on that circle (r1 when they do not overlap).
double covered_radius(double r1, double delta, std::int64_t count);

/// One circle sweep of the annulus search.
struct SweepRecord {
    int level = 0;       // counts completed Case-1 steps
    std::int64_t sweep = 0;
    double r1 = 0.0;     // sample circle radius
    double r2 = 0.0;
    double delta = 0.0;
    double exclusion = 0.0;  // disk radius certified eigenvalue-free around each failing sample
    std::int64_t circle_points = 0;
    std::int64_t samples = 0;
    std::int64_t evaluations = 0;
    double oracle_precision = 0.0;
    bool accepted = false;  // Case 1
    std::optional<cplx> point;
    std::optional<double> sigma;
};

struct ExtremeTrace {
    std::vector<SweepRecord> sweeps;
    double initial_sigma = 0.0;
    double initial_r1 = 0.0;
    double initial_r2 = 0.0;
    int levels = 0;
    std::int64_t total_oracle_calls = 0;
    std::int64_t total_evaluations = 0;
    Outcome outcome = Outcome::failure;
    FailureKind failure = FailureKind::none;
    std::string message;
    std::vector<std::string> warnings;
};

struct ExtremeResult {
    cplx value;
    double r1 = 0.0;  // final annulus: r1 <= |lambda_min| <= r2
    double r2 = 0.0;
    double error_bound = 0.0;  // distance from value to some eigenvalue
    bool singular = false;     // sigma_0(0) below threshold, value is 0
    ExtremeTrace trace;

    bool ok() const { return trace.outcome == Outcome::found; }
};

struct GapResult {
    double gap = 0.0;
    cplx lambda_min;
    bool resolved = false;  // false: no second eigenvalue found outside the exclusion disk
    double exclusion_radius = 0.0;
    ExtremeResult first;
    ExtremeResult second;  // on B = (A - lambda_min I) / (1 + |lambda_min|)
    std::vector<std::string> warnings;

    bool ok() const { return first.ok() && (second.ok() || !resolved); }
};

/// Annulus search for the eigenvalue of smallest modulus.
ExtremeResult smallest_modulus_eigenvalue(const ComplexMatrix& a, const ExtremeParams& params);

/// Distance from the smallest-modulus eigenvalue to the nearest other
/// eigenvalue, from a second annulus search on the shifted matrix that skips
/// the disk already attributed to lambda_min.
GapResult spectral_gap(const ComplexMatrix& a, const ExtremeParams& params);

/// Largest-modulus eigenvalue through the smallest-modulus eigenvalue of
/// sigma_min(A) A^-1. Exact oracle only, n <= 256.
ExtremeResult largest_modulus_eigenvalue(const ComplexMatrix& a, const ExtremeParams& params);

}  // namespace nneig
