#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nneig/linalg.hpp"

namespace nneig {

/// Recipe for a test matrix A = P J P^-1 with known Jordan structure.
struct JordanSpec {
    std::vector<cplx> eigenvalues;  // one per Jordan block
    std::vector<int> block_sizes;   // aligned with eigenvalues
    double kappa_target = 1.0;      // cond(P)
    std::uint64_t seed = 0;
    std::size_t n = 0;              // expected dimension; 0 means sum(block_sizes)
};

struct GeneratedMatrix {
    ComplexMatrix matrix;
    std::vector<cplx> true_eigenvalues;  // one per block, already divided by scale
    std::vector<int> block_sizes;
    std::optional<double> kappa_used;    // cond(P) of the similarity used
    // cond(P * S) where S rescales each block so the normalized matrix has unit
    // superdiagonals; a valid Jordan condition bound for `matrix`.
    std::optional<double> jordan_kappa;
    std::optional<int> m_max;
    double scale = 1.0;
    std::vector<std::string> warnings;
};

/// Builds A = P J P^-1 / scale with P = U D V (U, V Haar unitary, D a
/// geometric ramp from sqrt(kappa) to 1/sqrt(kappa)) and
/// scale = max(1, ||P J P^-1||).
GeneratedMatrix jordan_matrix(const JordanSpec& spec);

/// Same, but P = I exactly (no randomness); kappa_target is ignored.
GeneratedMatrix jordan_matrix_identity_basis(const std::vector<cplx>& eigenvalues,
                                             const std::vector<int>& block_sizes);

/// Companion matrix of x^d + c_{d-1} x^{d-1} + ... + c_0 (coefficients given
/// low order first), divided by max(1, ||C||). Roots are scale * eig(matrix).
GeneratedMatrix companion_matrix(const std::vector<cplx>& coeffs);

/// Haar-distributed random unitary of size n.
Eigen::MatrixXcd random_unitary(std::size_t n, std::uint64_t seed);

/// Matrix with i.i.d. complex Gaussian entries scaled to operator norm `norm`.
ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed, double norm = 1.0);

}  // namespace nneig
