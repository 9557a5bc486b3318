#include "nneig/report.hpp"

#include "nneig/matrix_io.hpp"

namespace nneig {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json optional_complex(const std::optional<cplx>& v) { return v ? complex_to_json(*v) : json(nullptr); }

json complex_list(const std::vector<cplx>& zs) {
    json out = json::array();
    for (const auto& z : zs) out.push_back(complex_to_json(z));
    return out;
}

json level_json(const LevelRecord& l) {
    return {{"level", l.level},
            {"delta", l.delta},
            {"radius", l.radius},
            {"center", complex_to_json(l.center)},
            {"half_width", l.half_width},
            {"grid_size", l.grid_size},
            {"samples", l.samples},
            {"evaluations", l.evaluations},
            {"oracle_precision", l.oracle_precision},
            {"failed_draws", l.failed_draws},
            {"accepted", optional_complex(l.accepted)},
            {"accepted_sigma", optional_json(l.accepted_sigma)},
            {"next_radius", l.next_radius}};
}

json sweep_json(const SweepRecord& s) {
    return {{"level", s.level},
            {"sweep", s.sweep},
            {"r1", s.r1},
            {"r2", s.r2},
            {"delta", s.delta},
            {"exclusion", s.exclusion},
            {"circle_points", s.circle_points},
            {"samples", s.samples},
            {"evaluations", s.evaluations},
            {"oracle_precision", s.oracle_precision},
            {"accepted", s.accepted},
            {"point", optional_complex(s.point)},
            {"sigma", optional_json(s.sigma)}};
}

}  // namespace

json to_json(const SolverTrace& t, TraceDetail detail) {
    json j{{"level_count", t.levels.size()},
           {"total_oracle_calls", t.total_oracle_calls},
           {"total_evaluations", t.total_evaluations},
           {"planned_samples", t.planned_samples},
           {"per_call_fail_prob", t.per_call_fail_prob},
           {"norm_scale", t.norm_scale},
           {"outcome", to_string(t.outcome)},
           {"failure", to_string(t.failure)},
           {"failed_level", t.failed_level},
           {"message", t.message}};
    if (detail == TraceDetail::full) {
        json levels = json::array();
        for (const auto& l : t.levels) levels.push_back(level_json(l));
        j["levels"] = std::move(levels);
    }
    return j;
}

json to_json(const EigenEstimate& r, TraceDetail detail) {
    json j{{"ok", r.ok()}, {"trace", to_json(r.trace, detail)}};
    if (r.ok()) {
        j["eigenvalue"] = complex_to_json(r.value);
        j["error_bound"] = r.error_bound;
    }
    return j;
}

json to_json(const RegionResult& r, TraceDetail detail) {
    json j{{"found", r.found},
           {"refined", r.refined},
           {"margin", r.margin},
           {"classification", r.found ? "found" : "none"},
           {"trace", to_json(r.trace, detail)}};
    if (r.found) {
        j["eigenvalue"] = complex_to_json(r.estimate);
        j["error_bound"] = r.error_bound;
    }
    return j;
}

json to_json(const EigenvectorResult& r) {
    json v = json::array();
    for (Eigen::Index i = 0; i < r.vector.size(); ++i) v.push_back(complex_to_json(r.vector[i]));
    return {{"eigenvector", std::move(v)},
            {"residual", r.residual},
            {"sigma", r.sigma},
            {"degenerate", r.degenerate},
            {"warnings", r.warnings}};
}

json to_json(const ExtremeTrace& t, TraceDetail detail) {
    json j{{"sweep_count", t.sweeps.size()},
           {"initial_sigma", t.initial_sigma},
           {"initial_r1", t.initial_r1},
           {"initial_r2", t.initial_r2},
           {"levels", t.levels},
           {"total_oracle_calls", t.total_oracle_calls},
           {"total_evaluations", t.total_evaluations},
           {"outcome", to_string(t.outcome)},
           {"failure", to_string(t.failure)},
           {"message", t.message},
           {"warnings", t.warnings}};
    if (detail == TraceDetail::full) {
        json sweeps = json::array();
        for (const auto& s : t.sweeps) sweeps.push_back(sweep_json(s));
        j["sweeps"] = std::move(sweeps);
    }
    return j;
}

json to_json(const ExtremeResult& r, TraceDetail detail) {
    json j{{"ok", r.ok()}, {"singular", r.singular}, {"trace", to_json(r.trace, detail)}};
    if (r.ok()) {
        j["eigenvalue"] = complex_to_json(r.value);
        j["modulus"] = std::abs(r.value);
        j["annulus"] = {r.r1, r.r2};
        j["error_bound"] = r.error_bound;
    }
    return j;
}

json to_json(const GapResult& r, TraceDetail detail) {
    return {{"ok", r.ok()},
            {"gap", r.gap},
            {"lambda_min", complex_to_json(r.lambda_min)},
            {"resolved", r.resolved},
            {"exclusion_radius", r.exclusion_radius},
            {"warnings", r.warnings},
            {"first", to_json(r.first, detail)},
            {"second", to_json(r.second, detail)}};
}

json to_json(const HmuReport& r) {
    return {{"mu", complex_to_json(r.mu)},
            {"nu", r.nu},
            {"alpha_mu", r.alpha_mu},
            {"eta", r.eta},
            {"eps", r.eps},
            {"degree", r.degree},
            {"spectral_error", r.spectral_error},
            {"exact_map_error", r.exact_map_error},
            {"g_spectrum", {r.g_min, r.g_max}},
            {"sigma0", r.sigma0},
            {"sigma0_recovered", r.sigma0_recovered},
            {"recovery_bound", r.recovery_bound}};
}

json to_json(const InclusionReport& r) {
    json ex = json::array();
    for (const auto& v : r.examples)
        ex.push_back({{"kind", to_string(v.kind)},
                      {"node", {v.re, v.im}},
                      {"eps", v.eps},
                      {"sigma0", v.sigma},
                      {"distance", v.distance},
                      {"bound", v.bound}});
    return {{"ok", r.ok()},
            {"eps", r.eps_list},
            {"kappa", r.kappa},
            {"m", r.m},
            {"tol", r.tol},
            {"members", r.members},
            {"inner_violations", r.inner_violations},
            {"outer_violations", r.outer_violations},
            {"nesting_violations", r.nesting_violations},
            {"violations", std::move(ex)}};
}

json metadata_json(const GeneratedMatrix& g) {
    return {{"true_eigenvalues", complex_list(g.true_eigenvalues)},
            {"block_sizes", g.block_sizes},
            {"kappa_used", optional_json(g.kappa_used)},
            {"jordan_kappa", optional_json(g.jordan_kappa)},
            {"m_max", optional_json(g.m_max)},
            {"scale", g.scale},
            {"warnings", g.warnings}};
}

}  // namespace nneig
