#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nneig/linalg.hpp"
#include "nneig/sigma_oracle.hpp"

namespace nneig {

/// Constraint on which grid points are sampled. Every supported region meets
/// a square grid in an index sub-rectangle, so sample counts stay exact.
struct Region {
    enum class Kind { disk, right_half, real_segment, rectangle };

    Kind kind = Kind::disk;
    double re_min = -std::numeric_limits<double>::infinity();
    double re_max = std::numeric_limits<double>::infinity();
    double im_min = -std::numeric_limits<double>::infinity();
    double im_max = std::numeric_limits<double>::infinity();

    static Region whole() { return {}; }
    /// Closed half plane Re z >= 0; points on the imaginary axis are sampled.
    static Region right_half();
    static Region real_segment(double lo, double hi);
    static Region rectangle(double re_lo, double re_hi, double im_lo, double im_hi);

    bool contains(cplx z) const;
};

std::string to_string(Region::Kind kind);

enum class ScanMode {
    automatic,   // pruned with an exact oracle, exhaustive with a noisy one
    exhaustive,  // query every sample up to the first acceptance
    pruned,      // exact oracle only: skip samples certified to fail
};

struct SolverParams {
    double epsilon = 1e-3;
    double kappa = 1.0;  // upper bound on the Jordan condition number
    int m = 1;           // upper bound on the largest Jordan block
    double p_fail = 0.0; // noisy mode: per-call fail_prob becomes p_fail / planned samples
    SigmaOracleConfig oracle;
    Region region;
    std::optional<int> max_levels_override;
    bool normalize = false;  // divide A by ||A|| when it exceeds 1, rescale results back
    ScanMode scan = ScanMode::automatic;
};

void validate(const SolverParams& params);

enum class Outcome { found, no_eigenvalue_in_region, failure };
enum class FailureKind { none, bound_violation, probabilistic };

std::string to_string(Outcome outcome);
std::string to_string(FailureKind kind);

struct LevelRecord {
    int level = 0;
    double delta = 0.0;
    double radius = 0.0;  // R at the start of the level
    cplx center;          // sampling centre at the start of the level
    std::int64_t half_width = 0;  // s = ceil(R / delta)
    std::int64_t grid_size = 0;   // samples in the (region-restricted) grid
    std::int64_t samples = 0;     // samples visited in scan order, acceptance included
    std::int64_t evaluations = 0; // sigma_0 evaluations actually performed
    double oracle_precision = 0.0;
    std::int64_t failed_draws = 0;
    std::optional<cplx> accepted;
    std::optional<double> accepted_sigma;  // oracle estimate at the accepted point
    double next_radius = 0.0;
};

struct SolverTrace {
    std::vector<LevelRecord> levels;
    std::int64_t total_oracle_calls = 0;  // sum of samples (the sampling count N_s)
    std::int64_t total_evaluations = 0;
    std::int64_t planned_samples = 0;
    double per_call_fail_prob = 0.0;
    double norm_scale = 1.0;
    Outcome outcome = Outcome::failure;
    FailureKind failure = FailureKind::none;
    int failed_level = 0;
    std::string message;
};

struct EigenEstimate {
    cplx value;
    double error_bound = 0.0;  // certified distance to some eigenvalue (exact oracle)
    SolverTrace trace;

    bool ok() const { return trace.outcome == Outcome::found; }
};

struct RegionResult {
    bool found = false;
    cplx estimate;
    double error_bound = 0.0;
    double margin = 0.0;   // delta at level 1; meaningful when !found
    bool refined = false;  // every level accepted inside the region
    SolverTrace trace;
};

struct EigenvectorResult {
    ComplexVector vector;
    double residual = 0.0;  // ||(A - lambda I) v||
    double sigma = 0.0;
    bool degenerate = false;
    std::vector<std::string> warnings;
};

/// 1 / (kappa (3 * 2^level)^m).
double grid_spacing(int level, double kappa, int m);

/// ceil(log2(1 / epsilon)).
int level_count(double epsilon);

/// Upper bound on the number of samples the search can take, assuming every
/// acceptance satisfies estimate <= delta.
std::int64_t planned_samples(const SolverParams& params, bool real_axis);

/// Shrinking-disk grid search for one eigenvalue of A (||A|| <= 1).
EigenEstimate estimate_eigenvalue(const ComplexMatrix& a, const SolverParams& params);

/// One-dimensional variant for matrices whose eigenvalues are all real.
EigenEstimate estimate_real_eigenvalue(const ComplexMatrix& a, const SolverParams& params);

/// Existence scan restricted to `params.region` (exact oracle only).
RegionResult has_eigenvalue_in_region(const ComplexMatrix& a, const SolverParams& params);

/// Approximate eigenvector for an eigenvalue estimate: the smallest right
/// singular vector of A - lambda I. `estimate_error`, when known, is checked
/// against the gap precondition estimate_error < gap / 2.
EigenvectorResult eigenvector_for(const ComplexMatrix& a, cplx lambda, double gap,
                                  std::optional<double> estimate_error = std::nullopt);

}  // namespace nneig
