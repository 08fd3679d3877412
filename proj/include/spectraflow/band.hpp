#pragma once

#include "spectraflow/matrix.hpp"

#include <cstddef>
#include <vector>

namespace spectraflow {

// Symmetric band matrix: entries with |i - j| <= bandwidth, stored with one
// extra diagonal of headroom for the bulge created during reduction.
class SymmetricBandMatrix {
public:
  SymmetricBandMatrix(std::size_t dimension, std::size_t bandwidth);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t bandwidth() const noexcept { return bandwidth_; }

  // Sets both (i, j) and (j, i). |i - j| must not exceed the bandwidth.
  void set(std::size_t i, std::size_t j, double value);
  double get(std::size_t i, std::size_t j) const noexcept;

  Matrix to_dense() const;

  // Rutishauser/Schwarz Givens reduction to tridiagonal form followed by
  // implicit QL. O(bandwidth * d^2) instead of O(d^3).
  std::vector<double> eigenvalues() const;

private:
  friend struct BandReducer;
  double& at(std::size_t i, std::size_t j) noexcept { return data_[i * stride_ + (j + store_) - i]; }
  double at(std::size_t i, std::size_t j) const noexcept { return data_[i * stride_ + (j + store_) - i]; }
  bool stored(std::size_t i, std::size_t j) const noexcept {
    return (i > j ? i - j : j - i) <= store_;
  }

  std::size_t n_;
  std::size_t bandwidth_;
  std::size_t store_;   // stored half-width (bandwidth + 1)
  std::size_t stride_;  // 2 * store_ + 1
  std::vector<double> data_;
};

// Eigenvalues of a symmetric tridiagonal matrix (diag, off with off[i]
// coupling i and i+1), ascending. Throws NumericalError on non-convergence.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off,
                                            int max_sweeps = 64);

} // namespace spectraflow
