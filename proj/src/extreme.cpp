#include "nneig/extreme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "nneig/error.hpp"
#include "scan.hpp"

namespace nneig {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr std::int64_t kMaxCirclePoints = 2'000'000'000;
constexpr std::size_t kMaxInverseDim = 256;

double radius_bound(double kappa, int m, double sigma) {
    return 3.0 * std::pow(kappa * sigma, 1.0 / static_cast<double>(m));
}

bool is_noisy(const ExtremeParams& p) { return p.oracle.mode == OracleMode::noisy; }

double sweep_precision(const ExtremeParams& p, double delta) {
    if (!is_noisy(p)) return 0.0;
    return p.oracle.precision > 0.0 ? p.oracle.precision : delta / 4.0;
}

// Annulus [r1, r2] with an optional excluded disk |z| <= exclusion that is
// already accounted for. Samples on the circle |z| = r1 are kept at least
// twice their certified radius away from the excluded disk.
struct Annulus {
    double r1 = 0.0;
    double r2 = 0.0;
    double exclusion = 0.0;
};

double spacing_for(const Annulus& an, const ExtremeParams& p, double eps) {
    double width = an.r2 - an.r1;
    if (an.exclusion > 0.0) width = std::min(width, an.r1 - an.exclusion);
    // A degenerate starting annulus (thinner than eps) is searched at the
    // resolution of eps itself.
    width = std::max(width, eps);
    return std::pow(width / 6.0, static_cast<double>(p.m)) / p.kappa;
}

struct SweepHit {
    std::int64_t index = 0;
    double value = 0.0;
};

class CircleSweeper {
public:
    CircleSweeper(const SigmaOracle& oracle, const ExtremeParams& p) : oracle_(oracle), p_(p) {}

    std::optional<SweepHit> run(SweepRecord& rec) {
        const double r = rec.r1;
        const std::int64_t m = rec.circle_points;
        auto point = [r, m](double t) {
            return std::polar(r, 2.0 * std::numbers::pi * t / static_cast<double>(m));
        };
        if (!is_noisy(p_) && p_.scan != ScanMode::exhaustive) {
            auto eval = [&](double t) { return oracle_.exact(point(t)); };
            auto radius = [r, m](std::int64_t a, std::int64_t b) {
                const double half = std::min(std::numbers::pi, std::numbers::pi * static_cast<double>(b - a) /
                                                                   static_cast<double>(m));
                return 2.0 * r * std::sin(0.5 * half);
            };
            detail::LineSearch<decltype(eval), decltype(radius)> search(rec.delta, eval, radius);
            const auto hit = search.run(m);
            rec.evaluations = search.evaluations();
            if (!hit) return std::nullopt;
            return SweepHit{hit->i, hit->value};
        }
        if (is_noisy(p_) && p_.scan == ScanMode::pruned)
            fail(ErrorKind::unsupported, "pruned scanning requires the exact oracle");
        const auto stream = static_cast<std::uint64_t>(rec.sweep + 1);
        for (std::int64_t t = 0; t < m; ++t) {
            const auto est = oracle_.query(point(static_cast<double>(t)), QueryKey{stream, t, 0}, rec.oracle_precision);
            ++rec.evaluations;
            if (est.value <= rec.delta) return SweepHit{t, est.value};
        }
        return std::nullopt;
    }

private:
    const SigmaOracle& oracle_;
    const ExtremeParams& p_;
};

// Runs Case 1 / Case 2 sweeps until a Case-1 step leaves r2 - r1 < eps.
// Returns found, or failure with the reason in the trace. `emptied` is set
// when Case 2 pushed r1 past r2 (no eigenvalue left in the annulus).
ExtremeResult annulus_search(const SigmaOracle& oracle, const ExtremeParams& p, double eps, Annulus an,
                             ExtremeTrace trace, bool& emptied) {
    ExtremeResult res;
    emptied = false;
    CircleSweeper sweeper(oracle, p);
    std::int64_t sweep = 0;
    int level = 0;

    auto finish_failure = [&](FailureKind kind, std::string msg) {
        trace.outcome = Outcome::failure;
        trace.failure = kind;
        trace.message = std::move(msg);
        res.r1 = an.r1;
        res.r2 = an.r2;
        res.trace = std::move(trace);
        return res;
    };

    while (true) {
        double delta = spacing_for(an, p, eps);
        const double cap_width = an.r2 - an.r1;
        const auto cap = static_cast<std::int64_t>(std::ceil(std::max(cap_width, 0.0) / (p.c * delta))) + 1;
        std::int64_t case2 = 0;

        while (true) {
            if (sweep >= p.max_sweeps)
                return finish_failure(FailureKind::bound_violation,
                                      "no convergence within " + std::to_string(p.max_sweeps) + " sweeps");
            if (an.r1 > an.r2 + kNormTolerance) {
                emptied = true;
                return finish_failure(is_noisy(p) ? FailureKind::probabilistic : FailureKind::bound_violation,
                                      "annulus emptied at level " + std::to_string(level + 1) +
                                          ": no eigenvalue found up to radius " + std::to_string(an.r2));
            }

            SweepRecord rec;
            rec.level = level + 1;
            rec.sweep = sweep;
            rec.r1 = an.r1;
            rec.r2 = an.r2;
            rec.delta = delta;
            rec.oracle_precision = sweep_precision(p, delta);
            rec.exclusion = delta - rec.oracle_precision;
            const CircleCount cc = circle_count(an.r1, rec.exclusion, p.c);
            if (cc.cover_complete || !(cc.covered_radius > an.r1))
                fail(ErrorKind::contract, "sample disks exceed the annulus radius; search geometry is inconsistent");
            rec.circle_points = cc.count;

            const auto hit = sweeper.run(rec);
            rec.samples = hit ? hit->index + 1 : rec.circle_points;
            trace.total_oracle_calls += rec.samples;
            trace.total_evaluations += rec.evaluations;
            ++sweep;

            if (hit) {
                rec.accepted = true;
                rec.point = std::polar(an.r1, 2.0 * std::numbers::pi * static_cast<double>(hit->index) /
                                                  static_cast<double>(rec.circle_points));
                rec.sigma = hit->value;
                trace.sweeps.push_back(rec);

                const double reach = radius_bound(p.kappa, p.m, hit->value + rec.oracle_precision);
                an.r2 = std::min(an.r2, an.r1 + reach);
                ++level;
                res.value = *rec.point;
                res.error_bound = reach;
                if (an.r2 - an.r1 < eps) {
                    trace.outcome = Outcome::found;
                    trace.levels = level;
                    res.r1 = an.r1;
                    res.r2 = an.r2;
                    res.trace = std::move(trace);
                    return res;
                }
                break;
            }

            trace.sweeps.push_back(rec);
            an.r1 = cc.covered_radius;
            if (++case2 > cap)
                return finish_failure(is_noisy(p) ? FailureKind::probabilistic : FailureKind::bound_violation,
                                      "Case-2 repetition cap reached at level " + std::to_string(level + 1) +
                                          "; kappa or m is likely underestimated");
            // Never shrink the spacing within a level.
            delta = std::max(delta, spacing_for(an, p, eps));
        }
    }
}

double checked_norm(const ComplexMatrix& a, bool normalize) {
    const double norm = operator_norm(a);
    if (norm <= 1.0 + kNormTolerance) return 1.0;
    if (!normalize)
        fail(ErrorKind::input, "operator norm " + std::to_string(norm) + " exceeds 1; rescale the matrix or enable normalize");
    return norm;
}

ExtremeResult rescaled(ExtremeResult r, double s) {
    r.value *= s;
    r.r1 *= s;
    r.r2 *= s;
    r.error_bound *= s;
    return r;
}

ExtremeResult smallest_modulus_normalized(const ComplexMatrix& a, const ExtremeParams& p, double eps) {
    const SigmaOracle oracle(a, p.oracle);
    ExtremeTrace trace;
    const double prec = is_noisy(p) ? (p.oracle.precision > 0.0 ? p.oracle.precision : eps / 10.0) : 0.0;
    const auto est = oracle.query(0.0, QueryKey{0, 0, 0}, prec);
    trace.initial_sigma = est.value;
    trace.total_oracle_calls = 1;
    trace.total_evaluations = 1;

    const double threshold = std::max(1e-12, eps / 10.0);
    if (est.value <= threshold) {
        ExtremeResult res;
        res.singular = true;
        res.value = 0.0;
        res.r1 = 0.0;
        res.r2 = std::min(1.0, radius_bound(p.kappa, p.m, est.value + prec));
        res.error_bound = res.r2;
        trace.outcome = Outcome::found;
        trace.message = "sigma_0(0) below threshold; 0 is treated as an eigenvalue";
        res.trace = std::move(trace);
        return res;
    }

    Annulus an;
    an.r1 = std::max(0.0, est.value - prec);
    an.r2 = std::min(radius_bound(p.kappa, p.m, est.value + prec), 1.0);
    trace.initial_r1 = an.r1;
    trace.initial_r2 = an.r2;
    bool emptied = false;
    return annulus_search(oracle, p, eps, an, std::move(trace), emptied);
}

}  // namespace

void validate(const ExtremeParams& p) {
    if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) fail(ErrorKind::input, "epsilon must lie in (0, 1)");
    if (!(p.kappa >= 1.0) || !std::isfinite(p.kappa)) fail(ErrorKind::input, "kappa must be >= 1");
    if (p.m < 1) fail(ErrorKind::input, "m must be >= 1");
    if (!(p.c > 0.0 && p.c < 1.0)) fail(ErrorKind::input, "c must lie in (0, 1)");
    if (p.max_sweeps < 1) fail(ErrorKind::input, "max_sweeps must be positive");
    validate(p.oracle);
}

CircleCount circle_count(double r1, double delta, double c) {
    if (!(c > 0.0 && c < 1.0)) fail(ErrorKind::input, "c must lie in (0, 1)");
    if (!(r1 > 0.0) || !(delta > 0.0)) fail(ErrorKind::input, "circle radius and spacing must be positive");
    const double arg = std::sqrt(1.0 - c * c) * delta / r1;
    if (arg > 1.0) return {1, true, r1};
    const double count = std::ceil(std::numbers::pi / std::asin(arg));
    if (!(count <= static_cast<double>(kMaxCirclePoints)))
        fail(ErrorKind::range, "circle needs more than " + std::to_string(kMaxCirclePoints) + " samples");
    const auto m = static_cast<std::int64_t>(count);
    return {m, false, covered_radius(r1, delta, m)};
}

double covered_radius(double r1, double delta, std::int64_t count) {
    if (count < 2) return r1;
    // Neighbouring disks meet on the bisector at r1 cos(t) + sqrt(delta^2 - r1^2 sin^2(t)).
    const double t = std::numbers::pi / static_cast<double>(count);
    const double h = r1 * std::sin(t);
    if (h >= delta) return r1;
    return std::max(r1, r1 * std::cos(t) + std::sqrt(delta * delta - h * h));
}

ExtremeResult smallest_modulus_eigenvalue(const ComplexMatrix& a, const ExtremeParams& params) {
    validate(params);
    const double s = checked_norm(a, params.normalize);
    if (s == 1.0) return smallest_modulus_normalized(a, params, params.epsilon);
    return rescaled(smallest_modulus_normalized(a.scaled(1.0 / s), params, params.epsilon / s), s);
}

GapResult spectral_gap(const ComplexMatrix& a, const ExtremeParams& params) {
    validate(params);
    const double s = checked_norm(a, params.normalize);
    const ComplexMatrix an = s == 1.0 ? a : a.scaled(1.0 / s);
    const double eps = params.epsilon / s;

    GapResult out;
    out.first = smallest_modulus_normalized(an, params, eps);
    if (!out.first.ok()) {
        out.first = rescaled(std::move(out.first), s);
        return out;
    }

    const cplx lambda = out.first.value;
    const double shift_scale = 1.0 + std::abs(lambda);
    const double rho = out.first.error_bound;
    const double r_ex = std::max(rho, eps) / shift_scale;
    out.lambda_min = lambda * s;
    out.exclusion_radius = r_ex * shift_scale * s;

    Eigen::MatrixXcd b = an.eigen();
    b.diagonal().array() -= lambda;
    b /= shift_scale;
    const ComplexMatrix bm(b);

    ExtremeTrace trace;
    Annulus ann{2.0 * r_ex, 1.0, r_ex};
    trace.initial_r1 = ann.r1;
    trace.initial_r2 = ann.r2;
    if (ann.r1 >= ann.r2) {
        out.warnings.push_back("exclusion disk around lambda_min covers the unit disk; gap is not resolvable at this eps");
        out.first = rescaled(std::move(out.first), s);
        return out;
    }

    bool emptied = false;
    out.second = annulus_search(SigmaOracle(bm, params.oracle), params, eps / shift_scale, ann, std::move(trace), emptied);
    out.first = rescaled(std::move(out.first), s);
    if (out.second.ok()) {
        out.resolved = true;
        out.gap = std::abs(out.second.value) * shift_scale * s;
    } else if (emptied) {
        out.gap = 0.0;
        out.warnings.push_back("no eigenvalue farther than " + std::to_string(2.0 * out.exclusion_radius) +
                               " from lambda_min; A - lambda_min I is near singular (repeated eigenvalue?)");
    }
    out.second = rescaled(std::move(out.second), shift_scale * s);
    return out;
}

ExtremeResult largest_modulus_eigenvalue(const ComplexMatrix& a, const ExtremeParams& params) {
    validate(params);
    if (is_noisy(params)) fail(ErrorKind::unsupported, "largest-modulus search requires the exact oracle");
    if (a.dim() > kMaxInverseDim)
        fail(ErrorKind::unsupported, "largest-modulus search inverts A; n must be <= " + std::to_string(kMaxInverseDim));
    const double smin = smallest_singular_value(a.eigen());
    if (!(smin > 1e-14 * std::max(1.0, operator_norm(a))))
        fail(ErrorKind::input, "matrix is singular to working precision; its inverse does not exist");

    const Eigen::MatrixXcd inv = a.eigen().fullPivLu().inverse();
    const double tau = operator_norm(inv);
    const ComplexMatrix b(inv / tau);

    ExtremeResult r = smallest_modulus_normalized(b, params, params.epsilon / tau);
    if (!r.ok()) return r;
    const cplx nu = r.value;
    const double err = r.error_bound;
    ExtremeResult out = r;
    out.value = 1.0 / (tau * nu);
    out.r1 = 1.0 / (tau * r.r2);
    out.r2 = 1.0 / (tau * r.r1);
    out.error_bound = std::abs(nu) > err ? err / (tau * std::abs(nu) * (std::abs(nu) - err))
                                         : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace nneig
