#pragma once

#include <cstdint>
#include <optional>

#include "nneig/linalg.hpp"

namespace nneig {

enum class OracleMode { exact, noisy };

/// Configuration of the smallest-singular-value oracle.
///
/// In noisy mode each query succeeds with probability 1 - fail_prob and then
/// returns a value within `precision` of the true sigma_0; on failure it
/// returns a uniform draw from [0, ||A|| + |mu|].
struct SigmaOracleConfig {
    OracleMode mode = OracleMode::exact;
    double precision = 0.0;  // noisy only; <= 0 lets the caller pick per level
    double fail_prob = 0.0;  // noisy only, in [0, 1)
    std::uint64_t seed = 0;
};

/// Coordinates that key the random stream of a noisy query, so the result
/// does not depend on the order in which queries are issued.
struct QueryKey {
    std::uint64_t stream = 0;  // level or sweep counter
    std::int64_t i = 0;
    std::int64_t j = 0;
};

struct SigmaEstimate {
    double value = 0.0;
    cplx mu;
    std::optional<double> exact_backend_value;  // recorded in noisy mode
    bool failed_draw = false;                   // noisy mode: this query hit the failure branch
};

struct GroundVector {
    ComplexVector vector;  // unit norm
    double sigma = 0.0;
    bool degenerate = false;
};

void validate(const SigmaOracleConfig& cfg);

/// sigma_0 query bound to one matrix. Exact queries are pure; noisy queries are
/// pure functions of (seed, key).
class SigmaOracle {
public:
    SigmaOracle(const ComplexMatrix& a, SigmaOracleConfig cfg);

    /// True smallest singular value of A - mu I.
    double exact(cplx mu) const;

    /// Oracle answer at mu. `precision_override` > 0 replaces cfg.precision and
    /// `fail_prob_override` >= 0 replaces cfg.fail_prob for this query.
    SigmaEstimate query(cplx mu, const QueryKey& key, double precision_override = 0.0,
                        double fail_prob_override = -1.0) const;

    const SigmaOracleConfig& config() const noexcept { return cfg_; }
    const ComplexMatrix& matrix() const noexcept { return a_; }
    double norm() const noexcept { return norm_; }

private:
    ComplexMatrix a_;
    SigmaOracleConfig cfg_;
    double norm_;
};

/// One-shot query; in noisy mode the key is derived from the bits of mu.
SigmaEstimate sigma0(const ComplexMatrix& a, cplx mu, const SigmaOracleConfig& cfg = {});

/// Right singular vector of A - mu I for its smallest singular value. The
/// phase is fixed so the first entry of largest magnitude is real and >= 0.
GroundVector ground_vector(const ComplexMatrix& a, cplx mu);

inline constexpr double kDegeneracyTolerance = 1e-12;

}  // namespace nneig
