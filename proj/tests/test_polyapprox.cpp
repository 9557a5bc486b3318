#include "doctest.h"

#include <cmath>
#include <random>

#include "nneig/error.hpp"
#include "nneig/matgen.hpp"
#include "nneig/polyapprox.hpp"
#include "oracles.hpp"

using namespace nneig;

namespace {

// Independent dense check: direct T_j recurrence, no Clenshaw.
double eval_direct(const ChebPoly& p, double x) {
    const double t = (2.0 * x - p.a - p.b) / (p.b - p.a);
    double t0 = 1.0, t1 = t, s = p.coeffs[0];
    for (std::size_t j = 1; j < p.coeffs.size(); ++j) {
        s += p.coeffs[j] * t1;
        const double t2 = 2.0 * t * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return s;
}

double max_dev(const ChebPoly& p, double lo, double hi, double (*f)(double), int count = 20011) {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const double x = lo + (hi - lo) * i / (count - 1);
        worst = std::max(worst, std::abs(eval_direct(p, x) - f(x)));
    }
    return worst;
}

double root(double x) { return std::sqrt(x); }
double zero(double) { return 0.0; }
double one(double) { return 1.0; }

}  // namespace

TEST_CASE("chebyshev round trip") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    for (int n : {1, 2, 7, 64, 301}) {
        std::vector<double> c(n);
        for (auto& v : c) v = nd(rng);
        const auto back = values_to_coeffs(coeffs_to_values(c));
        for (int j = 0; j < n; ++j) CHECK(std::abs(back[j] - c[j]) <= 1e-12);
    }
}

TEST_CASE("interpolation reproduces polynomials and multiply linearizes") {
    const auto p = interpolate([](double x) { return 3 * x * x - x + 0.5; }, -1.0, 1.0, 2);
    CHECK(std::abs(p(0.3) - (3 * 0.09 - 0.3 + 0.5)) <= 1e-14);
    const auto q = interpolate([](double x) { return x * x * x - 2 * x; }, -1.0, 1.0, 3);
    const auto pq = multiply(p, q);
    CHECK(pq.degree() == 5);
    for (double x : {-0.9, -0.2, 0.0, 0.45, 1.0}) CHECK(std::abs(pq(x) - p(x) * q(x)) <= 1e-13);
}

TEST_CASE("cheb_sqrt") {
    const auto p = cheb_sqrt(0.1, 1e-3);
    CHECK(std::abs(p(1.0) - 1.0) <= 1e-3);
    CHECK(max_dev(p, 0.05, 1.0, root) <= 1e-3);
    const int d3 = p.degree();
    const int d6 = cheb_sqrt(0.1, 1e-6).degree();
    CHECK(d6 <= 3 * d3);
    CHECK_THROWS_AS(cheb_sqrt(0.0, 1e-3), Error);
    CHECK_THROWS_AS(cheb_sqrt(0.1, 1.5), Error);
}

TEST_CASE("cheb_sqrt degree is affine in log(1/eps)") {
    std::vector<double> x, y;
    for (int k = 2; k <= 10; ++k) {
        const double eps = std::pow(10.0, -k);
        x.push_back(std::log(1.0 / eps));
        y.push_back(cheb_sqrt(0.05, eps).degree());
    }
    CHECK(oracle::r_squared(x, y) >= 0.95);
}

TEST_CASE("heaviside_poly") {
    const double eta = 0.1, eps = 1e-3;
    const auto p = heaviside_poly(eta, eps);
    CHECK(p.bounded);
    CHECK(std::abs(p(1.0) - 1.0) <= eps);
    CHECK(std::abs(p(-1.0)) <= eps);
    CHECK(max_dev(p, -1.0, eta / 2, zero) <= eps);
    CHECK(max_dev(p, eta, 1.0, one) <= eps);
    double peak = 0.0;
    for (int i = 0; i <= 40000; ++i) peak = std::max(peak, std::abs(eval_direct(p, -1.0 + i / 20000.0)));
    CHECK(peak <= 1.0 + 1e-9);
}

TEST_CASE("heaviside degree grows at most linearly in 1/eta") {
    const double eps = 1e-3;
    const int d_wide = heaviside_poly(0.2, eps).degree();
    for (double eta : {0.1, 0.05, 0.025}) {
        const int d = heaviside_poly(eta, eps).degree();
        CHECK(d <= 1.25 * d_wide * (0.2 / eta));
    }
}

TEST_CASE("sqrt_product meets both conditions") {
    const double eta = 0.1, eps = 1e-3;
    const auto p = sqrt_product(eta, eps);
    CHECK(p.bounded);
    CHECK(max_dev(p, eta, 1.0, root, 40009) <= eps);
    double peak = 0.0;
    for (int i = 0; i <= 40000; ++i) peak = std::max(peak, std::abs(eval_direct(p, -1.0 + i / 20000.0)));
    CHECK(peak <= 1.0 + 1e-9);
    CHECK(std::abs(p(eta) - std::sqrt(eta)) <= eps);
    CHECK(std::abs(p(0.0)) <= 1.0);
    const auto sweep = sweep_sqrt_product(p, eta);
    CHECK(sweep.max_abs <= 1.0);
    CHECK(sweep.max_sqrt_error <= eps);
}

TEST_CASE("unreachable tolerance is an approximation error") {
    try {
        (void)fit_to_tolerance([](double x) { return std::abs(x); }, -1.0, 1.0, 1e-9, {{-1.0, 1.0}}, 64);
        FAIL("expected an approximation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::approximation);
    }
}

TEST_CASE("verify_hmu") {
    const double eps = 1e-3;
    SUBCASE("zero matrix") {
        const double nu = 0.1;
        const auto r = verify_hmu(ComplexMatrix::zero(4), 0.0, nu, eps);
        CHECK(r.alpha_mu == 1.0);
        CHECK(r.spectral_error <= eps);
        CHECK(r.exact_map_error <= 1e-12);
        CHECK(std::abs(r.g_min - nu / (1 + nu)) <= 1e-15);
    }
    SUBCASE("diagonal closed form") {
        const double nu = 0.1;
        const auto r = verify_hmu(ComplexMatrix::diagonal({0.5, -0.25}), 0.5, nu, eps);
        CHECK(r.alpha_mu == 1.5);
        CHECK(r.spectral_error <= eps);
        CHECK(r.exact_map_error <= 1e-10);
        CHECK(std::abs(r.sigma0) <= 1e-15);
        CHECK(std::abs(r.sigma0_recovered - r.sigma0) <= r.recovery_bound);
    }
    SUBCASE("random n = 8") {
        const double nu = 0.1;
        const auto p = sqrt_product(nu / (1 + nu), 1e-4);
        const auto a = random_matrix(8, 11, 0.9);
        for (cplx mu : {cplx(0.0), cplx(0.3, -0.2), cplx(-0.7, 0.1)}) {
            const auto r = verify_hmu(a, mu, nu, 1e-4, p);
            CHECK(r.spectral_error <= 1e-4);
            CHECK(r.exact_map_error <= 1e-10);
            CHECK(std::abs(r.sigma0 - oracle::sigma_min(a, mu)) <= 1e-10);
            CHECK(std::abs(r.sigma0_recovered - r.sigma0) <= r.recovery_bound);
        }
    }
    CHECK_THROWS_AS(verify_hmu(ComplexMatrix::identity(2).scaled(1.5), 0.0, 0.1, eps), Error);
    CHECK_THROWS_AS(verify_hmu(ComplexMatrix::identity(2).scaled(0.5), 0.0, 0.0, eps), Error);
}
