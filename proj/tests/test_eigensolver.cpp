#include "doctest.h"

#include <cmath>

#include "nneig/eigensolver.hpp"
#include "nneig/error.hpp"
#include "nneig/matgen.hpp"
#include "oracles.hpp"

using namespace nneig;

namespace {

SolverParams exact_params(double eps, double kappa = 1.0, int m = 1) {
    SolverParams p;
    p.epsilon = eps;
    p.kappa = kappa;
    p.m = m;
    return p;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::contract;
}

void check_trace_invariants(const SolverTrace& t) {
    for (std::size_t k = 0; k < t.levels.size(); ++k) {
        const auto& rec = t.levels[k];
        if (k > 0) CHECK(rec.delta < t.levels[k - 1].delta);
        if (rec.accepted_sigma) CHECK(*rec.accepted_sigma <= rec.delta);
        CHECK(rec.next_radius <= rec.radius);
        CHECK(rec.samples <= rec.grid_size);
        CHECK(rec.samples >= 1);
    }
}

}  // namespace

TEST_CASE("grid spacing formula") {
    CHECK(grid_spacing(1, 1.0, 1) == 1.0 / 6.0);
    CHECK(grid_spacing(1, 2.0, 2) == 1.0 / 72.0);
    CHECK(grid_spacing(3, 1.0, 1) == 1.0 / 24.0);
    CHECK(kind_of([] { grid_spacing(400, 1.0, 4); }) == ErrorKind::range);
    CHECK(kind_of([] { grid_spacing(0, 1.0, 1); }) == ErrorKind::input);
}

TEST_CASE("level count is base two") {
    CHECK(level_count(0.001) == 10);
    CHECK(level_count(0.5) == 1);
    CHECK(level_count(std::ldexp(1.0, -8)) == 8);
    CHECK(level_count(0.3) == 2);
    CHECK(kind_of([] { level_count(1.0); }) == ErrorKind::input);
}

TEST_CASE("diagonal matrix with two eigenvalues") {
    const auto a = ComplexMatrix::diagonal({0.5, cplx(-0.25, 0.3)});
    const auto est = estimate_eigenvalue(a, exact_params(1e-3));
    REQUIRE(est.ok());
    CHECK(oracle::min_distance({0.5, cplx(-0.25, 0.3)}, est.value) <= 1e-3);
    CHECK(est.trace.levels.size() == 10);
    CHECK(est.error_bound <= 1e-3);
    check_trace_invariants(est.trace);
}

TEST_CASE("zero matrix") {
    const auto est = estimate_eigenvalue(ComplexMatrix::zero(4), exact_params(0.1));
    REQUIRE(est.ok());
    CHECK(std::abs(est.value) <= 0.1);
}

TEST_CASE("defective block with loose kappa") {
    const auto g = jordan_matrix({{0.5}, {2}, 1.0, 0});
    const auto est = estimate_eigenvalue(g.matrix, exact_params(1e-2, 1.5, 2));
    REQUIRE(est.ok());
    CHECK(std::abs(est.value - g.true_eigenvalues[0]) <= 1e-2);
    CHECK(std::abs(g.true_eigenvalues[0] - 0.4142) <= 1e-4);
    check_trace_invariants(est.trace);
}

TEST_CASE("each level is certified to 2^-l") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const bool defective = seed % 3 == 0;
        const auto g = defective ? jordan_matrix({{std::polar(0.6, 1.0 * seed)}, {2}, 2.0, seed})
                                 : jordan_matrix({{0.3, cplx(-0.5, 0.2), cplx(0.1, 0.7)}, {1, 1, 1}, 5.0, seed});
        const int m = defective ? 2 : 1;
        const auto est = estimate_eigenvalue(g.matrix, exact_params(defective ? 1.0 / 64 : 1e-3, *g.jordan_kappa, m));
        REQUIRE(est.ok());
        for (const auto& rec : est.trace.levels) {
            REQUIRE(rec.accepted.has_value());
            CHECK(oracle::min_distance(g.true_eigenvalues, *rec.accepted) <= std::ldexp(1.0, -rec.level) + 1e-12);
            CHECK(rec.next_radius <= std::ldexp(1.0, -rec.level) + 1e-12);
        }
        check_trace_invariants(est.trace);
    }
}

TEST_CASE("pruned scan returns the same point and sample count as the exhaustive scan") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto g = seed % 2 == 0 ? jordan_matrix({{std::polar(0.5, 0.7 * seed)}, {2}, 1.0, seed})
                                     : jordan_matrix({{0.2, cplx(0.1, -0.6), -0.7}, {1, 1, 1}, 3.0, seed});
        SolverParams p = exact_params(seed % 2 == 0 ? 1.0 / 16 : 1.0 / 128, *g.jordan_kappa, seed % 2 == 0 ? 2 : 1);
        p.scan = ScanMode::pruned;
        const auto fast = estimate_eigenvalue(g.matrix, p);
        p.scan = ScanMode::exhaustive;
        const auto slow = estimate_eigenvalue(g.matrix, p);
        REQUIRE(fast.trace.levels.size() == slow.trace.levels.size());
        CHECK(fast.value == slow.value);
        CHECK(fast.trace.total_oracle_calls == slow.trace.total_oracle_calls);
        for (std::size_t k = 0; k < fast.trace.levels.size(); ++k) {
            CHECK(fast.trace.levels[k].samples == slow.trace.levels[k].samples);
            CHECK(fast.trace.levels[k].accepted == slow.trace.levels[k].accepted);
        }
        CHECK(slow.trace.total_evaluations == slow.trace.total_oracle_calls);
        CHECK(fast.trace.total_evaluations <= slow.trace.total_evaluations);
    }
}

TEST_CASE("real variant") {
    const auto d = ComplexMatrix::diagonal({0.9, -0.9, 0.1});
    const auto est = estimate_real_eigenvalue(d, exact_params(1e-3));
    REQUIRE(est.ok());
    CHECK(est.value.imag() == 0.0);
    CHECK(oracle::min_distance({0.9, -0.9, 0.1}, est.value) <= 1e-3);

    const auto half = estimate_real_eigenvalue(ComplexMatrix::identity(3).scaled(0.5), exact_params(1e-3));
    CHECK(std::abs(half.value - 0.5) <= 1e-3);

    // Nonsymmetric tridiagonal Toeplitz: eigenvalues 2 sqrt(bc) cos(k pi / (n + 1)), eigenvector
    // matrix D Q with cond(D) = (b / c)^((n - 1) / 2).
    const int n = 8;
    const double b = 0.3, c = 0.2;
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        t(i, i + 1) = b;
        t(i + 1, i) = c;
    }
    std::vector<cplx> truth;
    for (int k = 1; k <= n; ++k) truth.emplace_back(2.0 * std::sqrt(b * c) * std::cos(k * M_PI / (n + 1)));
    const double kappa = std::pow(b / c, (n - 1) / 2.0);
    const auto tri = estimate_real_eigenvalue(ComplexMatrix(t), exact_params(1e-3, kappa, 1));
    REQUIRE(tri.ok());
    CHECK(oracle::min_distance(truth, tri.value) <= 1e-3);
    for (const auto& rec : tri.trace.levels) CHECK(rec.grid_size == 2 * rec.half_width + 1);
}

TEST_CASE("real variant samples far fewer points") {
    const auto g = jordan_matrix_identity_basis({0.5}, {2});
    const auto p = exact_params(1.0 / 32, *g.jordan_kappa, 2);
    const auto two_d = estimate_eigenvalue(g.matrix, p);
    const auto one_d = estimate_real_eigenvalue(g.matrix, p);
    REQUIRE(two_d.ok());
    REQUIRE(one_d.ok());
    CHECK(one_d.trace.total_oracle_calls * 10 <= two_d.trace.total_oracle_calls);
}

TEST_CASE("single entry returns immediately") {
    const auto est = estimate_eigenvalue(ComplexMatrix::diagonal({cplx(0.3, -0.1)}), exact_params(1e-6));
    CHECK(est.ok());
    CHECK(est.value == cplx(0.3, -0.1));
    CHECK(est.trace.levels.empty());
    CHECK(est.trace.total_oracle_calls == 0);
}

TEST_CASE("norm above one needs normalization") {
    const auto big = ComplexMatrix::diagonal({1.6, cplx(0.2, 0.4)});
    CHECK(kind_of([&] { estimate_eigenvalue(big, exact_params(1e-3)); }) == ErrorKind::input);
    auto p = exact_params(1e-3);
    p.normalize = true;
    const auto est = estimate_eigenvalue(big, p);
    REQUIRE(est.ok());
    CHECK(est.trace.norm_scale == doctest::Approx(1.6));
    CHECK(oracle::min_distance({1.6, cplx(0.2, 0.4)}, est.value) <= 1.6e-3);
}

TEST_CASE("parameter validation") {
    const auto a = ComplexMatrix::identity(2);
    CHECK(kind_of([&] { estimate_eigenvalue(a, exact_params(0.0)); }) == ErrorKind::input);
    CHECK(kind_of([&] { estimate_eigenvalue(a, exact_params(1e-3, 0.5)); }) == ErrorKind::input);
    CHECK(kind_of([&] { estimate_eigenvalue(a, exact_params(1e-3, 1.0, 0)); }) == ErrorKind::input);
    auto p = exact_params(1e-3);
    p.p_fail = 1.0;
    CHECK(kind_of([&] { estimate_eigenvalue(a, p); }) == ErrorKind::input);
}

TEST_CASE("underestimated non-normality is reported as a bound violation") {
    // Strongly non-normal 2x2: sigma_0 is tiny on a long segment between the
    // eigenvalues, so kappa = 1 sends the search to a point far from both.
    const auto a = ComplexMatrix::from_rows({{0.05, 0.95}, {0.0, -0.05}});
    const auto est = estimate_eigenvalue(a, exact_params(1e-4, 1.0, 1));
    CHECK_FALSE(est.ok());
    CHECK(est.trace.failure == FailureKind::bound_violation);
    CHECK(est.trace.failed_level >= 1);
    CHECK(est.trace.message.find("level " + std::to_string(est.trace.failed_level)) != std::string::npos);
}

TEST_CASE("region scans") {
    auto p = exact_params(1e-3);
    p.region = Region::right_half();

    const auto found = has_eigenvalue_in_region(ComplexMatrix::diagonal({0.5, -0.5}), p);
    CHECK(found.found);
    CHECK(found.refined);
    CHECK(std::abs(found.estimate - 0.5) <= 1e-3);

    const auto none = has_eigenvalue_in_region(ComplexMatrix::diagonal({-0.5, -0.2}), p);
    CHECK_FALSE(none.found);
    CHECK(none.trace.outcome == Outcome::no_eigenvalue_in_region);
    CHECK(none.margin == doctest::Approx(1.0 / 6.0));
    REQUIRE(none.trace.levels.size() == 1);
    // Level 1 only samples Re >= 0: 7 columns of the 13 x 13 grid.
    CHECK(none.trace.levels[0].grid_size == 7 * 13);

    // Boundary convention: the closed half plane is sampled, so an eigenvalue
    // on the imaginary axis is found.
    const auto edge = has_eigenvalue_in_region(ComplexMatrix::zero(3), p);
    CHECK(edge.found);
    CHECK(std::abs(edge.estimate) <= 1e-3);

    auto noisy = p;
    noisy.oracle = {OracleMode::noisy, 0.0, 0.0, 1};
    CHECK(kind_of([&] { has_eigenvalue_in_region(ComplexMatrix::zero(2), noisy); }) == ErrorKind::unsupported);
}

TEST_CASE("rectangle region restricts acceptance") {
    auto p = exact_params(1e-3);
    p.region = Region::rectangle(-1.0, 0.0, 0.0, 1.0);
    const auto res = has_eigenvalue_in_region(ComplexMatrix::diagonal({0.5, cplx(-0.3, 0.4)}), p);
    CHECK(res.found);
    CHECK(std::abs(res.estimate - cplx(-0.3, 0.4)) <= 1e-3);
    for (const auto& rec : res.trace.levels) CHECK(p.region.contains(*rec.accepted));
}

TEST_CASE("noisy mode is deterministic and within budget") {
    const auto a = ComplexMatrix::diagonal({0.5, cplx(-0.25, 0.3)});
    SolverParams p = exact_params(1.0 / 32);
    p.p_fail = 0.1;
    p.oracle = {OracleMode::noisy, 0.0, 0.0, 17};
    const auto r1 = estimate_eigenvalue(a, p);
    const auto r2 = estimate_eigenvalue(a, p);
    CHECK(r1.value == r2.value);
    CHECK(r1.trace.total_oracle_calls == r2.trace.total_oracle_calls);
    CHECK(r1.trace.total_oracle_calls <= r1.trace.planned_samples);
    CHECK(r1.trace.per_call_fail_prob == doctest::Approx(0.1 / r1.trace.planned_samples));
    for (const auto& rec : r1.trace.levels) CHECK(rec.oracle_precision == doctest::Approx(rec.delta / 4));
    if (r1.ok()) CHECK(oracle::min_distance({0.5, cplx(-0.25, 0.3)}, r1.value) <= 1.0 / 32);
    CHECK(kind_of([&] {
              auto q = p;
              q.scan = ScanMode::pruned;
              estimate_eigenvalue(a, q);
          }) == ErrorKind::unsupported);
}

TEST_CASE("noisy mode with heavy failures reports a probabilistic failure") {
    const auto a = ComplexMatrix::diagonal({0.5, cplx(-0.25, 0.3)});
    SolverParams p = exact_params(1.0 / 64);
    p.oracle = {OracleMode::noisy, 0.0, 0.6, 0};
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        p.oracle.seed = seed;
        const auto r = estimate_eigenvalue(a, p);
        if (!r.ok()) {
            ++failures;
            CHECK(r.trace.failure == FailureKind::probabilistic);
        }
    }
    CHECK(failures > 0);
}

TEST_CASE("eigenvectors") {
    const auto d = ComplexMatrix::diagonal({0.5, -0.25});
    const auto v = eigenvector_for(d, 0.49, 0.75);
    CHECK(std::abs(std::abs(v.vector(0)) - 1.0) <= 1e-12);
    CHECK(v.residual == doctest::Approx(0.01).epsilon(1e-10));
    CHECK(v.warnings.empty());

    const auto g = jordan_matrix({{0.1, 0.4, cplx(-0.3, 0.2), cplx(0.0, -0.5), 0.7, -0.6, cplx(0.5, 0.5), -0.1},
                                  std::vector<int>(8, 1), 4.0, 21});
    const auto lambda = g.true_eigenvalues[2];
    const auto ev = eigenvector_for(g.matrix, lambda, 0.2, 0.0);
    CHECK(ev.residual <= 1e-10);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g.matrix.eigen());
    Eigen::Index idx = 0;
    (es.eigenvalues().array() - lambda).abs().minCoeff(&idx);
    const ComplexVector ref = es.eigenvectors().col(idx).normalized();
    const double fidelity = std::norm(ref.dot(ev.vector));
    CHECK(fidelity >= 1.0 - 1e-8);

    const auto tie = eigenvector_for(ComplexMatrix::diagonal({0.5, -0.5}), 0.0, 1.0);
    CHECK(tie.degenerate);
    CHECK_FALSE(tie.warnings.empty());

    CHECK(kind_of([&] { eigenvector_for(d, 0.49, 0.0); }) == ErrorKind::input);
    CHECK(kind_of([&] { eigenvector_for(d, 0.49, 0.75, 0.5); }) == ErrorKind::input);
}
