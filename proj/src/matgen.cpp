#include "nneig/matgen.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/QR>

#include "nneig/error.hpp"

namespace nneig {

namespace {

Eigen::MatrixXcd jordan_form(const std::vector<cplx>& eigenvalues, const std::vector<int>& block_sizes,
                             Eigen::Index n) {
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(n, n);
    Eigen::Index offset = 0;
    for (std::size_t b = 0; b < eigenvalues.size(); ++b) {
        for (int t = 0; t < block_sizes[b]; ++t) {
            j(offset + t, offset + t) = eigenvalues[b];
            if (t + 1 < block_sizes[b]) j(offset + t, offset + t + 1) = 1.0;
        }
        offset += block_sizes[b];
    }
    return j;
}

double condition_number(const Eigen::MatrixXcd& p) {
    const auto s = singular_values(p);
    return s.front() / s.back();
}

void validate(const JordanSpec& spec) {
    if (spec.eigenvalues.empty()) fail(ErrorKind::input, "at least one Jordan block is required");
    if (spec.eigenvalues.size() != spec.block_sizes.size())
        fail(ErrorKind::structural, "eigenvalues and block_sizes must have the same length");
    for (int b : spec.block_sizes)
        if (b < 1) fail(ErrorKind::structural, "block sizes must be positive");
    for (const auto& z : spec.eigenvalues)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            fail(ErrorKind::input, "eigenvalues must be finite");
    if (!(spec.kappa_target >= 1.0) || !std::isfinite(spec.kappa_target))
        fail(ErrorKind::input, "kappa_target must be >= 1");
    const auto total = static_cast<std::size_t>(std::accumulate(spec.block_sizes.begin(), spec.block_sizes.end(), 0));
    if (spec.n != 0 && total != spec.n)
        fail(ErrorKind::structural, "block sizes sum to " + std::to_string(total) + ", expected n=" +
                                        std::to_string(spec.n));
}

GeneratedMatrix assemble(const std::vector<cplx>& eigenvalues, const std::vector<int>& block_sizes,
                         const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& p_inv) {
    const Eigen::Index n = p.rows();
    const Eigen::MatrixXcd raw = p * jordan_form(eigenvalues, block_sizes, n) * p_inv;
    const double scale = std::max(1.0, operator_norm(raw));

    GeneratedMatrix out{ComplexMatrix(raw / scale), {}, block_sizes, {}, {}, {}, scale, {}};
    for (const auto& z : eigenvalues) {
        out.true_eigenvalues.push_back(z / scale);
        if (std::abs(z) > 1.0) out.warnings.push_back("eigenvalue outside the unit disk; normalization will shrink it");
    }
    out.m_max = *std::max_element(block_sizes.begin(), block_sizes.end());
    out.kappa_used = condition_number(p);

    // Dividing by scale turns the superdiagonal ones into 1/scale; the
    // similarity S = diag(1, scale, scale^2, ...) per block restores them.
    Eigen::VectorXcd s(n);
    Eigen::Index offset = 0;
    for (int b : block_sizes) {
        for (int t = 0; t < b; ++t) s(offset + t) = std::pow(scale, t);
        offset += b;
    }
    out.jordan_kappa = condition_number(p * s.asDiagonal());
    return out;
}

}  // namespace

Eigen::MatrixXcd random_unitary(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto sn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd z(sn, sn);
    for (Eigen::Index j = 0; j < sn; ++j)
        for (Eigen::Index i = 0; i < sn; ++i) z(i, j) = cplx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the distribution is Haar.
    for (Eigen::Index j = 0; j < sn; ++j) {
        const cplx d = r(j, j);
        const double a = std::abs(d);
        if (a > 0.0) q.col(j) *= d / a;
    }
    return q;
}

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed, double norm) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto sn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd z(sn, sn);
    for (Eigen::Index j = 0; j < sn; ++j)
        for (Eigen::Index i = 0; i < sn; ++i) z(i, j) = cplx(gauss(rng), gauss(rng));
    return ComplexMatrix(z * (norm / operator_norm(z)));
}

GeneratedMatrix jordan_matrix(const JordanSpec& spec) {
    validate(spec);
    const auto n = static_cast<std::size_t>(std::accumulate(spec.block_sizes.begin(), spec.block_sizes.end(), 0));
    const auto sn = static_cast<Eigen::Index>(n);

    Eigen::VectorXd d(sn);
    const double log_k = std::log(spec.kappa_target);
    for (Eigen::Index i = 0; i < sn; ++i) {
        const double t = sn == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(sn - 1);
        d(i) = std::exp(log_k * (0.5 - t));
    }
    const Eigen::MatrixXcd u = random_unitary(n, spec.seed);
    const Eigen::MatrixXcd v = random_unitary(n, spec.seed + 0x5851f42d4c957f2dULL);
    const Eigen::MatrixXcd p = u * d.cast<cplx>().asDiagonal() * v;
    const Eigen::MatrixXcd p_inv = v.adjoint() * d.cwiseInverse().cast<cplx>().asDiagonal() * u.adjoint();
    return assemble(spec.eigenvalues, spec.block_sizes, p, p_inv);
}

GeneratedMatrix jordan_matrix_identity_basis(const std::vector<cplx>& eigenvalues,
                                             const std::vector<int>& block_sizes) {
    validate({eigenvalues, block_sizes, 1.0, 0, 0});
    const auto n = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    return assemble(eigenvalues, block_sizes, id, id);
}

GeneratedMatrix companion_matrix(const std::vector<cplx>& coeffs) {
    if (coeffs.empty()) fail(ErrorKind::input, "polynomial degree must be at least 1");
    const auto d = static_cast<Eigen::Index>(coeffs.size());
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i) c(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) c(i, d - 1) = -coeffs[static_cast<std::size_t>(i)];
    if (!all_finite(c)) fail(ErrorKind::input, "coefficients must be finite");
    const double scale = std::max(1.0, operator_norm(c));
    return GeneratedMatrix{ComplexMatrix(c / scale), {}, {}, {}, {}, {}, scale, {}};
}

}  // namespace nneig
