#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nneig/linalg.hpp"
#include "nneig/matgen.hpp"

namespace nneig {

struct PspecRegion {
    double re_min = -1.0;
    double re_max = 1.0;
    double im_min = -1.0;
    double im_max = 1.0;
};

/// sigma_0 sampled on a uniform resolution x resolution grid; node (i, j)
/// is re(i) + i im(j) with both axes including their end points.
struct PspecGrid {
    PspecRegion region;
    int resolution = 0;
    std::vector<double> values;  // values[j * resolution + i], i along Re, j along Im

    double re(int i) const;
    double im(int j) const;
    cplx node(int i, int j) const { return {re(i), im(j)}; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * resolution + i]; }
};

/// Exact sigma_0 at every node. The region must lie inside |mu| <= 2.
PspecGrid pspec_grid(const ComplexMatrix& a, const PspecRegion& region, int resolution);

/// CSV with header `re,im,sigma0`, one row per node (Im outer, Re inner).
void write_csv(const PspecGrid& grid, std::ostream& out);

/// JSON sidecar: region, resolution, eps list and membership counts.
std::string sidecar_json(const PspecGrid& grid, const std::vector<double>& eps_list);

enum class InclusionKind { inner, outer, nesting };

std::string to_string(InclusionKind kind);

struct InclusionViolation {
    InclusionKind kind = InclusionKind::inner;
    double re = 0.0;
    double im = 0.0;
    double eps = 0.0;
    double sigma = 0.0;
    double distance = 0.0;  // to the nearest true eigenvalue
    double bound = 0.0;
};

struct InclusionReport {
    std::vector<double> eps_list;
    double kappa = 1.0;
    int m = 1;
    double tol = 1e-9;
    std::vector<long> members;  // nodes with sigma_0 <= eps, per eps
    long inner_violations = 0;
    long outer_violations = 0;
    long nesting_violations = 0;
    std::vector<InclusionViolation> examples;  // first few of each kind

    bool ok() const { return inner_violations == 0 && outer_violations == 0 && nesting_violations == 0; }
};

/// Outer inclusion radius for sigma_0 <= eps: kappa eps when m = 1, else the
/// largest 3 (kappa eps)^(1/m') over block sizes m' <= m.
double outer_radius(double kappa, int m, double eps);

/// Checks both pseudospectral inclusions and nesting over eps_list at
/// every node against known eigenvalues and Jordan data.
InclusionReport check_inclusions(const PspecGrid& grid, const std::vector<cplx>& eigenvalues, double kappa, int m,
                                 std::vector<double> eps_list, double tol = 1e-9);

/// Uses true_eigenvalues, jordan_kappa (or kappa_used) and m_max.
InclusionReport check_inclusions(const PspecGrid& grid, const GeneratedMatrix& meta,
                                 const std::vector<double>& eps_list, double tol = 1e-9);

/// Largest |sigma(u) - sigma(v)| - |u - v| over horizontally and vertically
/// adjacent nodes; <= 1e-10 for a 1-Lipschitz sigma_0.
double lipschitz_excess(const PspecGrid& grid);

}  // namespace nneig
