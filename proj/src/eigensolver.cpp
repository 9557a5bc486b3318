#include "nneig/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include "nneig/error.hpp"
#include "scan.hpp"

namespace nneig {

namespace {

constexpr double kNormTolerance = 1e-12;
// Region boundaries are compared in grid-index units with this slack so that
// points lying exactly on a boundary are sampled.
constexpr double kIndexSlack = 1e-9;
constexpr std::int64_t kMaxHalfWidth = 1'000'000'000;

bool is_noisy(const SolverParams& p) { return p.oracle.mode == OracleMode::noisy; }

double level_precision(const SolverParams& p, double delta) {
    if (!is_noisy(p)) return 0.0;
    return p.oracle.precision > 0.0 ? p.oracle.precision : delta / 4.0;
}

double radius_bound(double kappa, int m, double sigma) {
    return 3.0 * std::pow(kappa * sigma, 1.0 / static_cast<double>(m));
}

int levels_for(const SolverParams& p) {
    return p.max_levels_override ? *p.max_levels_override : level_count(p.epsilon);
}

std::int64_t half_width(double radius, double delta) {
    const double s = std::ceil(radius / delta);
    if (!(s <= static_cast<double>(kMaxHalfWidth)))
        fail(ErrorKind::range, "grid half-width exceeds " + std::to_string(kMaxHalfWidth) +
                                   "; kappa or m is too large for this precision");
    return static_cast<std::int64_t>(s);
}

std::int64_t lower_index(double bound, double origin, double delta, std::int64_t s) {
    if (!std::isfinite(bound)) return -s;
    const double t = std::ceil((bound - origin) / delta - kIndexSlack);
    return static_cast<std::int64_t>(std::clamp(t, static_cast<double>(-s - 1), static_cast<double>(s + 1)));
}

std::int64_t upper_index(double bound, double origin, double delta, std::int64_t s) {
    if (!std::isfinite(bound)) return s;
    const double t = std::floor((bound - origin) / delta + kIndexSlack);
    return static_cast<std::int64_t>(std::clamp(t, static_cast<double>(-s - 1), static_cast<double>(s + 1)));
}

detail::IndexBox level_box(const Region& region, cplx center, double delta, std::int64_t s, bool real_axis) {
    detail::IndexBox box;
    box.i0 = std::max(-s, lower_index(region.re_min, center.real(), delta, s));
    box.i1 = std::min(s, upper_index(region.re_max, center.real(), delta, s));
    if (real_axis) {
        box.j0 = box.j1 = 0;
        if (center.imag() < region.im_min || center.imag() > region.im_max) box.j1 = -1;
    } else {
        box.j0 = std::max(-s, lower_index(region.im_min, center.imag(), delta, s));
        box.j1 = std::min(s, upper_index(region.im_max, center.imag(), delta, s));
    }
    return box;
}

std::int64_t samples_until(const detail::IndexBox& box, const detail::LatticeHit& hit) {
    return (hit.i - box.i0) * box.cols() + (hit.j - box.j0) + 1;
}

Region scaled_region(const Region& r, double scale) {
    Region out = r;
    out.re_min /= scale;
    out.re_max /= scale;
    out.im_min /= scale;
    out.im_max /= scale;
    return out;
}

struct SearchOutcome {
    cplx center;
    double error_bound = 0.0;
    SolverTrace trace;
};

// Runs the level loop. The trace outcome is `found` when every level accepted,
// otherwise `failure` with failed_level set.
SearchOutcome run_levels(const ComplexMatrix& a, const SolverParams& params, bool real_axis) {
    const SigmaOracle oracle(a, params.oracle);
    const bool noisy = is_noisy(params);
    const bool prune = !noisy && params.scan != ScanMode::exhaustive;
    if (noisy && params.scan == ScanMode::pruned)
        fail(ErrorKind::unsupported, "pruned scanning requires the exact oracle");

    SearchOutcome out;
    SolverTrace& trace = out.trace;
    trace.planned_samples = planned_samples(params, real_axis);
    trace.per_call_fail_prob = noisy ? (params.p_fail > 0.0
                                            ? params.p_fail / static_cast<double>(trace.planned_samples)
                                            : params.oracle.fail_prob)
                                     : 0.0;

    cplx center{0.0, 0.0};
    double radius = 1.0;
    const int levels = levels_for(params);

    for (int l = 1; l <= levels; ++l) {
        const double delta = grid_spacing(l, params.kappa, params.m);
        const std::int64_t s = half_width(radius, delta);
        const detail::IndexBox box = level_box(params.region, center, delta, s, real_axis);

        LevelRecord rec;
        rec.level = l;
        rec.delta = delta;
        rec.radius = radius;
        rec.center = center;
        rec.half_width = s;
        rec.grid_size = box.rows() * box.cols();
        rec.oracle_precision = level_precision(params, delta);

        auto point = [&](double i, double j) { return center + cplx(i * delta, j * delta); };
        std::optional<detail::LatticeHit> hit;

        if (prune) {
            auto eval = [&](double i, double j) { return oracle.exact(point(i, j)); };
            detail::LatticeSearch<decltype(eval)> search(delta, delta, eval);
            hit = search.run(box);
            rec.evaluations = search.evaluations();
        } else {
            const auto stream = static_cast<std::uint64_t>(l);
            for (std::int64_t i = box.i0; i <= box.i1 && !hit; ++i) {
                for (std::int64_t j = box.j0; j <= box.j1; ++j) {
                    const SigmaEstimate est = oracle.query(point(static_cast<double>(i), static_cast<double>(j)),
                                                           QueryKey{stream, i, j}, rec.oracle_precision,
                                                           trace.per_call_fail_prob);
                    ++rec.evaluations;
                    if (est.failed_draw) ++rec.failed_draws;
                    if (est.value <= delta) {
                        hit = detail::LatticeHit{i, j, est.value};
                        break;
                    }
                }
            }
        }

        rec.samples = hit ? samples_until(box, *hit) : rec.grid_size;
        trace.total_oracle_calls += rec.samples;
        trace.total_evaluations += rec.evaluations;

        if (!hit) {
            rec.next_radius = radius;
            trace.levels.push_back(rec);
            trace.outcome = Outcome::failure;
            trace.failed_level = l;
            trace.failure = noisy ? FailureKind::probabilistic : FailureKind::bound_violation;
            trace.message = noisy ? "no grid point accepted at level " + std::to_string(l) +
                                        "; a noisy query likely misled an earlier level"
                                  : "no grid point accepted at level " + std::to_string(l) +
                                        "; kappa or m is likely underestimated";
            out.center = center;
            return out;
        }

        const cplx accepted = point(static_cast<double>(hit->i), static_cast<double>(hit->j));
        const double sigma_eff = hit->value + rec.oracle_precision;
        rec.accepted = accepted;
        rec.accepted_sigma = hit->value;
        rec.next_radius = std::min(radius_bound(params.kappa, params.m, sigma_eff), radius);
        trace.levels.push_back(rec);

        center = accepted;
        radius = rec.next_radius;
        out.error_bound = radius_bound(params.kappa, params.m, sigma_eff);

        if (noisy && trace.total_oracle_calls > trace.planned_samples) {
            trace.outcome = Outcome::failure;
            trace.failure = FailureKind::probabilistic;
            trace.failed_level = l;
            trace.message = "sample budget exhausted at level " + std::to_string(l);
            out.center = center;
            return out;
        }
    }

    trace.outcome = Outcome::found;
    out.center = center;
    return out;
}

struct Prepared {
    ComplexMatrix matrix;
    SolverParams params;
    double scale = 1.0;
};

Prepared prepare(const ComplexMatrix& a, const SolverParams& params) {
    validate(params);
    const double norm = operator_norm(a);
    if (norm <= 1.0 + kNormTolerance) return {a, params, 1.0};
    if (!params.normalize)
        fail(ErrorKind::input, "operator norm " + std::to_string(norm) + " exceeds 1; rescale the matrix or enable normalize");
    Prepared p{a.scaled(1.0 / norm), params, norm};
    p.params.region = scaled_region(params.region, norm);
    return p;
}

EigenEstimate finish(SearchOutcome&& found, double scale) {
    EigenEstimate est;
    est.value = found.center * scale;
    est.error_bound = found.error_bound * scale;
    est.trace = std::move(found.trace);
    est.trace.norm_scale = scale;
    return est;
}

EigenEstimate estimate(const ComplexMatrix& a, const SolverParams& params, bool real_axis) {
    Prepared prep = prepare(a, params);
    if (prep.matrix.dim() == 1 && prep.params.region.kind == Region::Kind::disk) {
        EigenEstimate est;
        est.value = a(0, 0);
        if (real_axis) est.value = est.value.real();
        est.trace.outcome = Outcome::found;
        est.trace.norm_scale = prep.scale;
        return est;
    }
    return finish(run_levels(prep.matrix, prep.params, real_axis), prep.scale);
}

}  // namespace

Region Region::right_half() {
    Region r;
    r.kind = Kind::right_half;
    r.re_min = 0.0;
    return r;
}

Region Region::real_segment(double lo, double hi) {
    require(lo <= hi, "real segment requires lo <= hi");
    Region r;
    r.kind = Kind::real_segment;
    r.re_min = lo;
    r.re_max = hi;
    r.im_min = 0.0;
    r.im_max = 0.0;
    return r;
}

Region Region::rectangle(double re_lo, double re_hi, double im_lo, double im_hi) {
    require(re_lo <= re_hi && im_lo <= im_hi, "rectangle bounds must be ordered");
    return Region{Kind::rectangle, re_lo, re_hi, im_lo, im_hi};
}

bool Region::contains(cplx z) const {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
}

std::string to_string(Region::Kind kind) {
    switch (kind) {
        case Region::Kind::disk: return "disk";
        case Region::Kind::right_half: return "right-half";
        case Region::Kind::real_segment: return "real";
        case Region::Kind::rectangle: return "rectangle";
    }
    return "unknown";
}

std::string to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::found: return "found";
        case Outcome::no_eigenvalue_in_region: return "no-eigenvalue-in-region";
        case Outcome::failure: return "failure";
    }
    return "unknown";
}

std::string to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::none: return "none";
        case FailureKind::bound_violation: return "bound-violation";
        case FailureKind::probabilistic: return "probabilistic-failure";
    }
    return "unknown";
}

void validate(const SolverParams& p) {
    if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) fail(ErrorKind::input, "epsilon must lie in (0, 1)");
    if (!(p.kappa >= 1.0) || !std::isfinite(p.kappa)) fail(ErrorKind::input, "kappa must be >= 1");
    if (p.m < 1) fail(ErrorKind::input, "m must be >= 1");
    if (!(p.p_fail >= 0.0 && p.p_fail < 1.0)) fail(ErrorKind::input, "p_fail must lie in [0, 1)");
    if (p.max_levels_override && *p.max_levels_override < 1) fail(ErrorKind::input, "max_levels must be >= 1");
    validate(p.oracle);
}

double grid_spacing(int level, double kappa, int m) {
    if (level < 1) fail(ErrorKind::input, "level must be >= 1");
    if (!(kappa >= 1.0)) fail(ErrorKind::input, "kappa must be >= 1");
    if (m < 1) fail(ErrorKind::input, "m must be >= 1");
    const double base = 3.0 * std::ldexp(1.0, level);
    const double denom = kappa * std::pow(base, static_cast<double>(m));
    if (!std::isfinite(denom) || !std::isnormal(1.0 / denom))
        fail(ErrorKind::range, "grid spacing underflows for level " + std::to_string(level) + " and m " +
                                   std::to_string(m));
    return 1.0 / denom;
}

int level_count(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) fail(ErrorKind::input, "epsilon must lie in (0, 1)");
    // frexp gives an exact answer for powers of two, where log2 may round up.
    int exp = 0;
    if (std::frexp(epsilon, &exp) == 0.5) return 1 - exp;
    return std::max(1, static_cast<int>(std::ceil(-std::log2(epsilon))));
}

std::int64_t planned_samples(const SolverParams& params, bool real_axis) {
    validate(params);
    double total = 0.0;
    double radius = 1.0;
    const int levels = levels_for(params);
    for (int l = 1; l <= levels; ++l) {
        const double delta = grid_spacing(l, params.kappa, params.m);
        const double side = 2.0 * std::ceil(radius / delta) + 1.0;
        total += real_axis ? side : side * side;
        radius = std::min(radius, radius_bound(params.kappa, params.m, delta + level_precision(params, delta)));
    }
    if (!(total < 9.0e18)) fail(ErrorKind::range, "planned sample count overflows");
    return static_cast<std::int64_t>(total);
}

EigenEstimate estimate_eigenvalue(const ComplexMatrix& a, const SolverParams& params) {
    return estimate(a, params, false);
}

EigenEstimate estimate_real_eigenvalue(const ComplexMatrix& a, const SolverParams& params) {
    return estimate(a, params, true);
}

RegionResult has_eigenvalue_in_region(const ComplexMatrix& a, const SolverParams& params) {
    if (is_noisy(params))
        fail(ErrorKind::unsupported, "region existence scans require the exact oracle");
    Prepared prep = prepare(a, params);
    SearchOutcome run = run_levels(prep.matrix, prep.params, false);

    RegionResult res;
    res.margin = grid_spacing(1, params.kappa, params.m) * prep.scale;
    res.trace = std::move(run.trace);
    res.trace.norm_scale = prep.scale;

    const int accepted = static_cast<int>(std::count_if(res.trace.levels.begin(), res.trace.levels.end(),
                                                        [](const LevelRecord& r) { return r.accepted.has_value(); }));
    if (accepted == 0) {
        res.trace.outcome = Outcome::no_eigenvalue_in_region;
        res.trace.failure = FailureKind::none;
        res.trace.message = "no level-1 grid point in the region has sigma_0 <= delta";
        return res;
    }
    res.found = true;
    res.estimate = run.center * prep.scale;
    res.error_bound = run.error_bound * prep.scale;
    res.refined = res.trace.outcome == Outcome::found;
    if (!res.refined) {
        res.trace.outcome = Outcome::found;
        res.trace.message = "refinement stopped at level " + std::to_string(res.trace.failed_level) +
                            "; estimate carries the last certified error bound";
    }
    return res;
}

EigenvectorResult eigenvector_for(const ComplexMatrix& a, cplx lambda, double gap,
                                  std::optional<double> estimate_error) {
    if (!(gap > 0.0) || !std::isfinite(gap)) fail(ErrorKind::input, "gap bound must be positive");
    if (estimate_error && !(*estimate_error < gap / 2.0))
        fail(ErrorKind::input, "estimate error " + std::to_string(*estimate_error) +
                                   " is not below half the gap bound " + std::to_string(gap / 2.0));
    const GroundVector g = ground_vector(a, lambda);
    EigenvectorResult out;
    out.vector = g.vector;
    out.sigma = g.sigma;
    out.degenerate = g.degenerate;
    out.residual = (shifted(a, lambda).eigen() * g.vector).norm();
    if (g.degenerate)
        out.warnings.push_back("smallest singular value of A - lambda I is degenerate; the vector is not unique");
    return out;
}

}  // namespace nneig
