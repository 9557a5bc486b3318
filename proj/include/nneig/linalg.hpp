#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace nneig {

using cplx = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

/// Dense square complex matrix with finite entries.
///
/// The matrix is immutable once constructed; all operations return new
/// matrices. Storage is an Eigen column-major matrix, while the serialized
/// form is row-major.
class ComplexMatrix {
public:
    /// Validates shape (square, n >= 1) and finiteness.
    explicit ComplexMatrix(Eigen::MatrixXcd m);

    /// Row-major entries; entries.size() must be n * n.
    static ComplexMatrix from_row_major(std::size_t n, const std::vector<cplx>& entries);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<cplx>& diag);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    cplx operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const Eigen::MatrixXcd& eigen() const noexcept { return m_; }
    std::vector<cplx> row_major() const;

    ComplexMatrix scaled(double factor) const;

    bool operator==(const ComplexMatrix& other) const { return m_ == other.m_; }

private:
    Eigen::MatrixXcd m_;
};

/// Singular values in descending order; right singular vectors as columns
/// (same order) when requested.
struct SvdResult {
    std::vector<double> singular_values;
    std::optional<Eigen::MatrixXcd> right_vectors;

    double smallest() const { return singular_values.back(); }
    double largest() const { return singular_values.front(); }
};

SvdResult svd(const Eigen::MatrixXcd& m, bool with_right_vectors = false);

/// Descending singular values of an arbitrary dense matrix.
std::vector<double> singular_values(const Eigen::MatrixXcd& m);

/// Smallest singular value. Uses a closed form for 2x2 inputs.
double smallest_singular_value(const Eigen::MatrixXcd& m);

double operator_norm(const ComplexMatrix& a);
double operator_norm(const Eigen::MatrixXcd& m);

/// A - mu * I, entrywise.
ComplexMatrix shifted(const ComplexMatrix& a, cplx mu);

/// Ascending eigenvalues and orthonormal eigenvectors of a Hermitian matrix.
struct HermitianEigen {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};
HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& h);

/// Eigenvalues of a general complex matrix (unordered). Used for ground truth
/// checks and companion-matrix reporting, never by the search itself.
std::vector<cplx> dense_eigenvalues(const Eigen::MatrixXcd& m);

bool all_finite(const Eigen::MatrixXcd& m);

}  // namespace nneig
