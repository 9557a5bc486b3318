#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "nneig/linalg.hpp"

namespace nneig {

inline constexpr int kMaxPolyDegree = 4096;

/// Real polynomial sum_j c_j T_j(t) with t the affine image of x in [a, b]
/// onto [-1, 1].
struct ChebPoly {
    std::vector<double> coeffs{0.0};
    double a = -1.0;
    double b = 1.0;
    bool bounded = false;  // |p(x)| <= 1 on [-1, 1] was verified

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double operator()(double x) const;
    std::vector<double> operator()(const std::vector<double>& xs) const;
};

/// First-kind Chebyshev points cos(pi (k + 1/2) / n), k = 0..n-1.
std::vector<double> cheb_points(int n);

/// Coefficients of the interpolant through values at cheb_points(values.size()).
std::vector<double> values_to_coeffs(const std::vector<double>& values);

/// Values of sum c_j T_j at cheb_points(n); n defaults to coeffs.size().
std::vector<double> coeffs_to_values(const std::vector<double>& coeffs, int n = 0);

/// Degree-`degree` interpolant of f at Chebyshev points scaled to [a, b].
ChebPoly interpolate(const std::function<double(double)>& f, double a, double b, int degree);

/// Product of two polynomials on the same domain via T_j T_k = (T_{j+k} + T_{|j-k|}) / 2.
ChebPoly multiply(const ChebPoly& p, const ChebPoly& q);

struct FitResult {
    ChebPoly poly;
    double max_error = 0.0;  // over the check set
};

/// Smallest degree (doubling, then bisection) whose interpolant on [a, b]
/// is within `tol` of f on the dense check set over `check`. Throws an
/// approximation error past `cap`.
FitResult fit_to_tolerance(const std::function<double(double)>& f, double a, double b, double tol,
                           const std::vector<std::pair<double, double>>& check, int cap = kMaxPolyDegree);

/// Uniform sample of the intervals with at least `count` points in total.
std::vector<double> sweep_points(const std::vector<std::pair<double, double>>& intervals, int count);

/// Interpolant of sqrt(x) on [eta/2, 1] with error <= eps there.
ChebPoly cheb_sqrt(double eta, double eps);

/// Bounded polynomial within eps of the step H(x - 3 eta / 4) on
/// [-1, eta/2] and [eta, 1].
ChebPoly heaviside_poly(double eta, double eps);

/// |p| <= 1 on [-1, 1] and |p(x) - sqrt(x)| <= eps on [eta, 1].
ChebPoly sqrt_product(double eta, double eps);

struct SweepReport {
    double max_abs = 0.0;         // max |p| over [-1, 1]
    double max_sqrt_error = 0.0;  // max |p - sqrt| over [eta, 1]
    int points = 0;
};

/// Dense check of both product conditions.
SweepReport sweep_sqrt_product(const ChebPoly& p, double eta);

struct HmuReport {
    cplx mu;
    double nu = 0.0;
    double alpha_mu = 0.0;
    double eta = 0.0;
    double eps = 0.0;
    int degree = 0;
    double spectral_error = 0.0;   // max |eig(p(G)) - sqrt(eig(G))|
    double exact_map_error = 0.0;  // max |eig(H) - sqrt((s_i^2 / alpha^2 + nu) / (1 + nu))|
    double g_min = 0.0;
    double g_max = 0.0;
    double sigma0 = 0.0;            // from a direct SVD
    double sigma0_recovered = 0.0;  // from the smallest eigenvalue of p(G)
    double recovery_bound = 0.0;    // alpha sqrt((1 + nu) eps (2 + eps))
};

/// Builds G = ((A - mu I)^H (A - mu I) / alpha^2 + nu I) / (1 + nu), applies
/// sqrt_product(nu / (1 + nu), eps) through its eigendecomposition and
/// compares with the exact square root.
HmuReport verify_hmu(const ComplexMatrix& a, cplx mu, double nu, double eps);

/// Same with a caller-supplied polynomial (built for eta = nu / (1 + nu)).
HmuReport verify_hmu(const ComplexMatrix& a, cplx mu, double nu, double eps, const ChebPoly& p);

/// Hermitian matrix function V diag(f(lambda)) V^H.
Eigen::MatrixXcd apply_to_hermitian(const Eigen::MatrixXcd& h, const std::function<double(double)>& f);

}  // namespace nneig
