#include "nneig/pseudospectra.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "nneig/error.hpp"

namespace nneig {

namespace {

constexpr double kMaxShift = 2.0;
constexpr std::size_t kExamplesPerKind = 8;

double min_distance(const std::vector<cplx>& eigenvalues, cplx z) {
    double best = INFINITY;
    for (const auto& e : eigenvalues) best = std::min(best, std::abs(z - e));
    return best;
}

}  // namespace

double PspecGrid::re(int i) const {
    return region.re_min + i * (region.re_max - region.re_min) / (resolution - 1);
}

double PspecGrid::im(int j) const {
    return region.im_min + j * (region.im_max - region.im_min) / (resolution - 1);
}

PspecGrid pspec_grid(const ComplexMatrix& a, const PspecRegion& region, int resolution) {
    require(resolution >= 2, "resolution must be at least 2");
    require(region.re_max >= region.re_min && region.im_max >= region.im_min, "region bounds are reversed");
    for (double re : {region.re_min, region.re_max})
        for (double im : {region.im_min, region.im_max})
            require(std::isfinite(re) && std::isfinite(im) && std::abs(cplx(re, im)) <= kMaxShift,
                    "pseudospectrum region must lie inside |mu| <= 2");

    PspecGrid g{region, resolution, {}};
    g.values.resize(static_cast<std::size_t>(resolution) * resolution);
    const Eigen::MatrixXcd& m = a.eigen();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    for (int j = 0; j < resolution; ++j)
        for (int i = 0; i < resolution; ++i)
            g.values[static_cast<std::size_t>(j) * resolution + i] = smallest_singular_value(m - g.node(i, j) * id);
    return g;
}

void write_csv(const PspecGrid& grid, std::ostream& out) {
    const auto old = out.precision(17);
    out << "re,im,sigma0\n";
    for (int j = 0; j < grid.resolution; ++j)
        for (int i = 0; i < grid.resolution; ++i) out << grid.re(i) << ',' << grid.im(j) << ',' << grid.at(i, j) << '\n';
    out.precision(old);
}

std::string sidecar_json(const PspecGrid& grid, const std::vector<double>& eps_list) {
    nlohmann::json j;
    j["region"] = {{"re", {grid.region.re_min, grid.region.re_max}}, {"im", {grid.region.im_min, grid.region.im_max}}};
    j["resolution"] = grid.resolution;
    j["eps"] = eps_list;
    std::vector<long> members;
    for (double e : eps_list)
        members.push_back(std::count_if(grid.values.begin(), grid.values.end(), [e](double s) { return s <= e; }));
    j["members"] = members;
    j["sigma0_min"] = *std::min_element(grid.values.begin(), grid.values.end());
    j["csv_columns"] = {"re", "im", "sigma0"};
    return j.dump(2);
}

std::string to_string(InclusionKind kind) {
    switch (kind) {
        case InclusionKind::inner: return "inner";
        case InclusionKind::outer: return "outer";
        case InclusionKind::nesting: return "nesting";
    }
    return "unknown";
}

double outer_radius(double kappa, int m, double eps) {
    if (m <= 1) return kappa * eps;
    double r = 0.0;
    for (int k = 1; k <= m; ++k) r = std::max(r, 3.0 * std::pow(kappa * eps, 1.0 / k));
    return r;
}

InclusionReport check_inclusions(const PspecGrid& grid, const std::vector<cplx>& eigenvalues, double kappa, int m,
                                 std::vector<double> eps_list, double tol) {
    require(!eigenvalues.empty(), "inclusion check needs the true eigenvalues");
    require(kappa >= 1.0 && m >= 1, "inclusion check needs kappa >= 1 and m >= 1");
    for (double e : eps_list) require(e > 0.0, "eps values must be positive");
    std::sort(eps_list.begin(), eps_list.end());

    InclusionReport r;
    r.eps_list = eps_list;
    r.kappa = kappa;
    r.m = m;
    r.tol = tol;
    r.members.assign(eps_list.size(), 0);
    std::size_t shown[3] = {0, 0, 0};
    auto record = [&](InclusionViolation v) {
        auto& count = shown[static_cast<int>(v.kind)];
        if (count++ < kExamplesPerKind) r.examples.push_back(v);
    };

    for (int j = 0; j < grid.resolution; ++j) {
        for (int i = 0; i < grid.resolution; ++i) {
            const cplx z = grid.node(i, j);
            const double s = grid.at(i, j);
            const double d = min_distance(eigenvalues, z);
            bool previous = false;
            for (std::size_t k = 0; k < eps_list.size(); ++k) {
                const double e = eps_list[k];
                const bool member = s <= e;
                if (member) ++r.members[k];
                if (d <= e && s > e + tol) {
                    ++r.inner_violations;
                    record({InclusionKind::inner, z.real(), z.imag(), e, s, d, e});
                }
                const double bound = outer_radius(kappa, m, e);
                if (member && d > bound + tol) {
                    ++r.outer_violations;
                    record({InclusionKind::outer, z.real(), z.imag(), e, s, d, bound});
                }
                if (previous && !member) {
                    ++r.nesting_violations;
                    record({InclusionKind::nesting, z.real(), z.imag(), e, s, d, e});
                }
                previous = member;
            }
        }
    }
    return r;
}

InclusionReport check_inclusions(const PspecGrid& grid, const GeneratedMatrix& meta,
                                 const std::vector<double>& eps_list, double tol) {
    const auto kappa = meta.jordan_kappa ? meta.jordan_kappa : meta.kappa_used;
    if (!kappa || !meta.m_max) fail(ErrorKind::input, "matrix metadata lacks kappa or block sizes");
    return check_inclusions(grid, meta.true_eigenvalues, *kappa, *meta.m_max, eps_list, tol);
}

double lipschitz_excess(const PspecGrid& grid) {
    double worst = -INFINITY;
    for (int j = 0; j < grid.resolution; ++j) {
        for (int i = 0; i < grid.resolution; ++i) {
            if (i + 1 < grid.resolution)
                worst = std::max(worst, std::abs(grid.at(i + 1, j) - grid.at(i, j)) -
                                            std::abs(grid.node(i + 1, j) - grid.node(i, j)));
            if (j + 1 < grid.resolution)
                worst = std::max(worst, std::abs(grid.at(i, j + 1) - grid.at(i, j)) -
                                            std::abs(grid.node(i, j + 1) - grid.node(i, j)));
        }
    }
    return worst;
}

}  // namespace nneig
