#pragma once

#include "spectraflow/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace spectraflow {

// Ascending spectral decomposition of a real symmetric matrix.
//
// vectors(i, k) is component k of the eigenvector belonging to values[i]
// (row i, not column i: rows are contiguous, which is what every consumer
// iterates over). Each eigenvector is unit length and its largest-magnitude
// component is positive.
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;

  std::size_t size() const noexcept { return values.size(); }
  std::span<const double> vector(std::size_t i) const { return vectors.row(i); }
};

struct EigenOptions {
  bool compute_vectors = true;
  // QL sweeps allowed per eigenvalue before reporting non-convergence.
  int max_sweeps = 64;
};

inline constexpr std::size_t kMaxEigenDimension = 4096;

// Householder tridiagonalization followed by implicit-shift QL.
// Throws ConfigError for non-square, non-symmetric (1e-12 relative) or
// oversized input, NumericalError if an eigenvalue fails to converge.
EigenDecomposition eigh(const Matrix& h, const EigenOptions& options = {});

// Eigenvalues only, ascending.
std::vector<double> eigvalsh(const Matrix& h);

struct ValidationReport {
  double max_residual = 0.0;        // max_i ||H v_i - lambda_i v_i||_2
  double max_orthonormality = 0.0;  // max_ij |v_i . v_j - delta_ij|
  double frobenius = 0.0;           // ||H||_F, for relative comparisons
};

// Residual and orthonormality defects of a decomposition; pure.
ValidationReport validate(const Matrix& h, const EigenDecomposition& decomp);

// ||V^T diag(lambda) V - H||_F with V holding eigenvectors as rows.
double reconstruction_error(const Matrix& h, const EigenDecomposition& decomp);

} // namespace spectraflow
