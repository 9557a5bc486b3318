#include "nneig/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nneig/error.hpp"

namespace nneig {

bool all_finite(const Eigen::MatrixXcd& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
        fail(ErrorKind::structural, "matrix must be square, got " + std::to_string(m_.rows()) + "x" +
                                        std::to_string(m_.cols()));
    if (m_.rows() < 1) fail(ErrorKind::structural, "matrix dimension must be at least 1");
    if (!all_finite(m_)) fail(ErrorKind::input, "matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::from_row_major(std::size_t n, const std::vector<cplx>& entries) {
    if (n == 0) fail(ErrorKind::structural, "matrix dimension must be at least 1");
    if (entries.size() != n * n)
        fail(ErrorKind::structural, "expected " + std::to_string(n * n) + " entries for n=" +
                                        std::to_string(n) + ", got " + std::to_string(entries.size()));
    const auto sn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXcd m(sn, sn);
    for (Eigen::Index i = 0; i < sn; ++i)
        for (Eigen::Index j = 0; j < sn; ++j) m(i, j) = entries[static_cast<std::size_t>(i * sn + j)];
    return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t n = rows.size();
    std::vector<cplx> entries;
    entries.reserve(n * n);
    for (const auto& r : rows) {
        if (r.size() != n) fail(ErrorKind::structural, "ragged row in matrix literal");
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return from_row_major(n, entries);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    const auto sn = static_cast<Eigen::Index>(n);
    return ComplexMatrix(Eigen::MatrixXcd::Identity(sn, sn));
}

ComplexMatrix ComplexMatrix::zero(std::size_t n) {
    const auto sn = static_cast<Eigen::Index>(n);
    return ComplexMatrix(Eigen::MatrixXcd::Zero(sn, sn));
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& diag) {
    const auto sn = static_cast<Eigen::Index>(diag.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(sn, sn);
    for (Eigen::Index i = 0; i < sn; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
    return ComplexMatrix(std::move(m));
}

std::vector<cplx> ComplexMatrix::row_major() const {
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(m_.size()));
    for (Eigen::Index i = 0; i < m_.rows(); ++i)
        for (Eigen::Index j = 0; j < m_.cols(); ++j) out.push_back(m_(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::scaled(double factor) const { return ComplexMatrix(m_ * factor); }

SvdResult svd(const Eigen::MatrixXcd& m, bool with_right_vectors) {
    SvdResult out;
    if (with_right_vectors) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> solver(m, Eigen::ComputeFullV);
        const auto& s = solver.singularValues();
        out.singular_values.assign(s.data(), s.data() + s.size());
        out.right_vectors = solver.matrixV();
    } else {
        out.singular_values = singular_values(m);
    }
    return out;
}

std::vector<double> singular_values(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> solver(m);
    const auto& s = solver.singularValues();
    return {s.data(), s.data() + s.size()};
}

namespace {

// sigma_min of [[a, b], [c, d]] as |det| / sigma_max.
double smallest_singular_value_2x2(const Eigen::MatrixXcd& m) {
    const cplx a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const double fro2 = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    if (fro2 == 0.0) return 0.0;
    const double det = std::abs(a * d - b * c);
    const double disc = std::max(0.0, fro2 * fro2 - 4.0 * det * det);
    const double smax = std::sqrt(0.5 * (fro2 + std::sqrt(disc)));
    return det / smax;
}

}  // namespace

double smallest_singular_value(const Eigen::MatrixXcd& m) {
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    if (m.rows() == 2 && m.cols() == 2) return smallest_singular_value_2x2(m);
    return singular_values(m).back();
}

double operator_norm(const Eigen::MatrixXcd& m) {
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    return singular_values(m).front();
}

double operator_norm(const ComplexMatrix& a) { return operator_norm(a.eigen()); }

ComplexMatrix shifted(const ComplexMatrix& a, cplx mu) {
    Eigen::MatrixXcd m = a.eigen();
    m.diagonal().array() -= mu;
    return ComplexMatrix(std::move(m));
}

HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) fail(ErrorKind::contract, "Hermitian eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<cplx> dense_eigenvalues(const Eigen::MatrixXcd& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success) fail(ErrorKind::contract, "dense eigensolver did not converge");
    const auto& v = solver.eigenvalues();
    return {v.data(), v.data() + v.size()};
}

}  // namespace nneig
