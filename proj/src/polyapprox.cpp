#include "nneig/polyapprox.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nneig/error.hpp"

namespace nneig {

namespace {

constexpr double kNormTolerance = 1e-12;

double to_unit(double x, double a, double b) { return (2.0 * x - a - b) / (b - a); }

double clenshaw(const std::vector<double>& c, double t) {
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t j = c.size(); j-- > 1;) {
        const double b0 = 2.0 * t * b1 - b2 + c[j];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + c[0];
}

// cos(2 pi r / (4n)) for r in [0, 4n)
std::vector<double> cos_table(int n) {
    std::vector<double> t(static_cast<std::size_t>(4 * n));
    for (int r = 0; r < 4 * n; ++r) t[r] = std::cos(std::numbers::pi * r / (2.0 * n));
    return t;
}

void check_eta_eps(double eta, double eps) {
    require(std::isfinite(eta) && eta > 0.0 && eta < 1.0, "eta must lie in (0, 1)");
    require(std::isfinite(eps) && eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
}

// z with erfc(z) = target, by bisection (erfc is decreasing).
double erfc_inverse(double target) {
    double lo = 0.0;
    double hi = 30.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::erfc(mid) > target ? lo : hi) = mid;
    }
    return hi;
}

double max_abs_on(const ChebPoly& p, double lo, double hi) {
    double worst = 0.0;
    for (double x : sweep_points({{lo, hi}}, std::max(4096, 8 * p.degree())))
        worst = std::max(worst, std::abs(p(x)));
    return worst;
}

}  // namespace

double ChebPoly::operator()(double x) const { return clenshaw(coeffs, to_unit(x, a, b)); }

std::vector<double> ChebPoly::operator()(const std::vector<double>& xs) const {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back((*this)(x));
    return out;
}

std::vector<double> cheb_points(int n) {
    require(n >= 1, "cheb_points needs n >= 1");
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) x[k] = std::cos(std::numbers::pi * (k + 0.5) / n);
    return x;
}

std::vector<double> values_to_coeffs(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    require(n >= 1, "values_to_coeffs needs at least one value");
    const auto table = cos_table(n);
    std::vector<double> c(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += values[k] * table[(static_cast<long>(j) * (2 * k + 1)) % (4 * n)];
        c[j] = 2.0 * s / n;
    }
    c[0] *= 0.5;
    return c;
}

std::vector<double> coeffs_to_values(const std::vector<double>& coeffs, int n) {
    require(!coeffs.empty(), "coeffs_to_values needs at least one coefficient");
    if (n <= 0) n = static_cast<int>(coeffs.size());
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n));
    for (double t : cheb_points(n)) v.push_back(clenshaw(coeffs, t));
    return v;
}

ChebPoly interpolate(const std::function<double(double)>& f, double a, double b, int degree) {
    require(b > a, "interpolation interval must have b > a");
    require(degree >= 0, "degree must be non-negative");
    const int n = degree + 1;
    std::vector<double> values(static_cast<std::size_t>(n));
    const auto t = cheb_points(n);
    for (int k = 0; k < n; ++k) values[k] = f(0.5 * (a + b) + 0.5 * (b - a) * t[k]);
    ChebPoly p;
    p.coeffs = values_to_coeffs(values);
    p.a = a;
    p.b = b;
    return p;
}

ChebPoly multiply(const ChebPoly& p, const ChebPoly& q) {
    require(p.a == q.a && p.b == q.b, "multiply needs polynomials on the same interval");
    ChebPoly r;
    r.a = p.a;
    r.b = p.b;
    r.coeffs.assign(p.coeffs.size() + q.coeffs.size() - 1, 0.0);
    for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
        for (std::size_t k = 0; k < q.coeffs.size(); ++k) {
            const double h = 0.5 * p.coeffs[j] * q.coeffs[k];
            r.coeffs[j + k] += h;
            r.coeffs[j > k ? j - k : k - j] += h;
        }
    }
    return r;
}

std::vector<double> sweep_points(const std::vector<std::pair<double, double>>& intervals, int count) {
    double total = 0.0;
    for (const auto& [lo, hi] : intervals) {
        require(hi >= lo, "sweep interval must have hi >= lo");
        total += hi - lo;
    }
    std::vector<double> xs;
    for (const auto& [lo, hi] : intervals) {
        const int k = total > 0.0 ? std::max(2, static_cast<int>(std::ceil(count * (hi - lo) / total))) : 1;
        if (k == 1 || hi == lo) {
            xs.push_back(lo);
            continue;
        }
        for (int i = 0; i < k; ++i) xs.push_back(lo + (hi - lo) * i / (k - 1));
    }
    return xs;
}

FitResult fit_to_tolerance(const std::function<double(double)>& f, double a, double b, double tol,
                           const std::vector<std::pair<double, double>>& check, int cap) {
    require(tol > 0.0, "tolerance must be positive");
    auto attempt = [&](int degree) {
        FitResult r{interpolate(f, a, b, degree), 0.0};
        for (double x : sweep_points(check, std::max(4096, 8 * degree)))
            r.max_error = std::max(r.max_error, std::abs(r.poly(x) - f(x)));
        return r;
    };

    int lo = 0;  // largest degree known to fail (0 = none tried)
    int hi = std::min(8, cap);
    FitResult best = attempt(hi);
    while (best.max_error > tol) {
        if (hi >= cap)
            fail(ErrorKind::approximation, "tolerance " + std::to_string(tol) + " not reached below degree cap " +
                                               std::to_string(cap) + " (error " + std::to_string(best.max_error) +
                                               ")");
        lo = hi;
        hi = std::min(2 * hi, cap);
        best = attempt(hi);
    }
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        auto r = attempt(mid);
        if (r.max_error <= tol) {
            hi = mid;
            best = std::move(r);
        } else {
            lo = mid;
        }
    }
    return best;
}

ChebPoly cheb_sqrt(double eta, double eps) {
    check_eta_eps(eta, eps);
    const double lo = eta / 2.0;
    return fit_to_tolerance([](double x) { return std::sqrt(x); }, lo, 1.0, eps, {{lo, 1.0}}).poly;
}

ChebPoly heaviside_poly(double eta, double eps) {
    check_eta_eps(eta, eps);
    // Scaled erf step: tails erfc(k eta / 4) / 2 <= eps / 8 at distance eta / 4 from the jump.
    const double k = 4.0 * erfc_inverse(eps / 4.0) / eta;
    const double shift = 0.75 * eta;
    const double scale = 1.0 - eps / 2.0;
    auto f = [=](double x) { return scale * 0.5 * (1.0 + std::erf(k * (x - shift))); };
    auto p = fit_to_tolerance(f, -1.0, 1.0, eps / 8.0, {{-1.0, 1.0}}).poly;
    if (max_abs_on(p, -1.0, 1.0) > 1.0) fail(ErrorKind::approximation, "step polynomial exceeds 1 on [-1, 1]");
    p.bounded = true;
    return p;
}

ChebPoly sqrt_product(double eta, double eps) {
    check_eta_eps(eta, eps);
    const double eps1 = eps / 2.0;
    const double eps2 = eps / (2.0 * (1.0 + eps1));

    // Bounded square root: sqrt of a smooth positive surrogate that equals x
    // above eta/2 up to a tail and stays near eta/4 below.
    const double k1 = 4.0 * erfc_inverse(eps1 * std::sqrt(eta / 2.0) / 2.0) / eta;
    const double quarter = eta / 4.0;
    const double scale = 1.0 - eps1 / 2.0;
    auto g = [=](double x) {
        const double t = 0.5 * (1.0 + std::erf(k1 * (x - quarter)));
        return scale * std::sqrt(std::max(0.0, x * t + quarter * (1.0 - t)));
    };
    auto p1 = fit_to_tolerance(g, -1.0, 1.0, eps1 / 4.0, {{-1.0, 1.0}}).poly;
    const auto p2 = heaviside_poly(eta, eps2);

    auto p = multiply(p1, p2);
    const auto report = sweep_sqrt_product(p, eta);
    if (report.max_abs > 1.0)
        fail(ErrorKind::approximation, "sqrt polynomial exceeds 1 on [-1, 1]: " + std::to_string(report.max_abs));
    if (report.max_sqrt_error > eps)
        fail(ErrorKind::approximation, "sqrt polynomial error " + std::to_string(report.max_sqrt_error) +
                                           " above " + std::to_string(eps));
    p.bounded = true;
    return p;
}

SweepReport sweep_sqrt_product(const ChebPoly& p, double eta) {
    SweepReport r;
    const int count = std::max(4096, 8 * p.degree());
    const auto whole = sweep_points({{-1.0, 1.0}}, count);
    for (double x : whole) r.max_abs = std::max(r.max_abs, std::abs(p(x)));
    const auto upper = sweep_points({{eta, 1.0}}, count);
    for (double x : upper) r.max_sqrt_error = std::max(r.max_sqrt_error, std::abs(p(x) - std::sqrt(x)));
    r.points = static_cast<int>(whole.size() + upper.size());
    return r;
}

Eigen::MatrixXcd apply_to_hermitian(const Eigen::MatrixXcd& h, const std::function<double(double)>& f) {
    const auto e = hermitian_eigen(h);
    Eigen::VectorXd fx(e.values.size());
    for (Eigen::Index i = 0; i < fx.size(); ++i) fx[i] = f(e.values[i]);
    return e.vectors * fx.asDiagonal() * e.vectors.adjoint();
}

HmuReport verify_hmu(const ComplexMatrix& a, cplx mu, double nu, double eps) {
    require(std::isfinite(nu) && nu > 0.0, "nu must be positive");
    return verify_hmu(a, mu, nu, eps, sqrt_product(nu / (1.0 + nu), eps));
}

HmuReport verify_hmu(const ComplexMatrix& a, cplx mu, double nu, double eps, const ChebPoly& p) {
    require(std::isfinite(nu) && nu > 0.0, "nu must be positive");
    require(std::isfinite(eps) && eps > 0.0, "eps must be positive");
    if (operator_norm(a) > 1.0 + kNormTolerance) fail(ErrorKind::contract, "verify_hmu needs ||A|| <= 1");

    HmuReport r;
    r.mu = mu;
    r.nu = nu;
    r.alpha_mu = 1.0 + std::abs(mu);
    r.eta = nu / (1.0 + nu);
    r.eps = eps;
    r.degree = p.degree();

    const Eigen::MatrixXcd d = shifted(a, mu).eigen();
    const auto n = d.rows();
    Eigen::MatrixXcd g = (d.adjoint() * d / (r.alpha_mu * r.alpha_mu) + nu * Eigen::MatrixXcd::Identity(n, n)) /
                         (1.0 + nu);
    g = 0.5 * (g + g.adjoint()).eval();

    const auto ge = hermitian_eigen(g);
    r.g_min = ge.values.minCoeff();
    r.g_max = ge.values.maxCoeff();
    if (r.g_min < r.eta - 1e-12 || r.g_max > 1.0 + 1e-12)
        fail(ErrorKind::contract, "spectrum of G left [eta, 1]");

    Eigen::MatrixXcd pg = apply_to_hermitian(g, [&](double x) { return p(x); });
    pg = 0.5 * (pg + pg.adjoint()).eval();
    const auto pe = hermitian_eigen(pg).values;  // ascending
    for (Eigen::Index i = 0; i < n; ++i)
        r.spectral_error = std::max(r.spectral_error, std::abs(pe[i] - std::sqrt(std::max(0.0, ge.values[i]))));

    Eigen::MatrixXcd h = apply_to_hermitian(g, [](double x) { return std::sqrt(std::max(0.0, x)); });
    h = 0.5 * (h + h.adjoint()).eval();
    const auto he = hermitian_eigen(h).values;
    auto s = singular_values(d);
    std::sort(s.begin(), s.end());
    for (Eigen::Index i = 0; i < n; ++i) {
        const double si = s[static_cast<std::size_t>(i)] / r.alpha_mu;
        r.exact_map_error = std::max(r.exact_map_error, std::abs(he[i] - std::sqrt((si * si + nu) / (1.0 + nu))));
    }

    r.sigma0 = s.front();
    const double e0 = pe[0];
    r.sigma0_recovered = r.alpha_mu * std::sqrt(std::max(0.0, e0 * e0 * (1.0 + nu) - nu));
    r.recovery_bound = r.alpha_mu * std::sqrt((1.0 + nu) * eps * (2.0 + eps));
    return r;
}

}  // namespace nneig
