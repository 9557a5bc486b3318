#include "nneig/sigma_oracle.hpp"

#include <bit>
#include <cmath>
#include <random>

#include "nneig/error.hpp"

namespace nneig {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_key(std::uint64_t seed, const QueryKey& key) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ key.stream);
    h = splitmix64(h ^ static_cast<std::uint64_t>(key.i));
    h = splitmix64(h ^ static_cast<std::uint64_t>(key.j));
    return h;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void validate(const SigmaOracleConfig& cfg) {
    if (cfg.mode == OracleMode::noisy) {
        if (!(cfg.fail_prob >= 0.0 && cfg.fail_prob < 1.0)) fail(ErrorKind::input, "fail_prob must lie in [0, 1)");
        if (!(cfg.precision >= 0.0) || !std::isfinite(cfg.precision))
            fail(ErrorKind::input, "oracle precision must be finite and non-negative");
    }
}

SigmaOracle::SigmaOracle(const ComplexMatrix& a, SigmaOracleConfig cfg)
    : a_(a), cfg_(cfg), norm_(operator_norm(a)) {
    validate(cfg_);
}

double SigmaOracle::exact(cplx mu) const {
    if (!finite(mu)) fail(ErrorKind::input, "shift mu must be finite");
    Eigen::MatrixXcd m = a_.eigen();
    m.diagonal().array() -= mu;
    return smallest_singular_value(m);
}

SigmaEstimate SigmaOracle::query(cplx mu, const QueryKey& key, double precision_override,
                                 double fail_prob_override) const {
    const double truth = exact(mu);
    if (cfg_.mode == OracleMode::exact) return {truth, mu, std::nullopt, false};

    const double precision = precision_override > 0.0 ? precision_override : cfg_.precision;
    const double theta = fail_prob_override >= 0.0 ? fail_prob_override : cfg_.fail_prob;
    if (!(precision > 0.0)) fail(ErrorKind::input, "noisy oracle requires a positive precision");

    std::mt19937_64 rng(mix_key(cfg_.seed, key));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SigmaEstimate est{0.0, mu, truth, false};
    if (unit(rng) < theta) {
        est.failed_draw = true;
        est.value = unit(rng) * (norm_ + std::abs(mu));
    } else {
        est.value = std::max(0.0, truth + precision * (2.0 * unit(rng) - 1.0));
    }
    return est;
}

SigmaEstimate sigma0(const ComplexMatrix& a, cplx mu, const SigmaOracleConfig& cfg) {
    if (!finite(mu)) fail(ErrorKind::input, "shift mu must be finite");
    const QueryKey key{0, std::bit_cast<std::int64_t>(mu.real()), std::bit_cast<std::int64_t>(mu.imag())};
    return SigmaOracle(a, cfg).query(mu, key);
}

GroundVector ground_vector(const ComplexMatrix& a, cplx mu) {
    if (!finite(mu)) fail(ErrorKind::input, "shift mu must be finite");
    const auto res = svd(shifted(a, mu).eigen(), true);
    const auto n = static_cast<Eigen::Index>(res.singular_values.size());
    GroundVector out;
    out.sigma = res.singular_values.back();
    out.vector = res.right_vectors->col(n - 1);
    out.degenerate = n > 1 && (res.singular_values[static_cast<std::size_t>(n - 2)] - out.sigma) < kDegeneracyTolerance;

    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        // first index wins ties up to rounding
        const double mag = std::abs(out.vector(i));
        if (mag > best * (1.0 + 1e-12)) {
            best = mag;
            pivot = i;
        }
    }
    if (best > 0.0) out.vector *= std::conj(out.vector(pivot)) / best;
    out.vector.normalize();
    return out;
}

}  // namespace nneig
