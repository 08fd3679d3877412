#include "spectraflow/band.hpp"

#include "spectraflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spectraflow {

SymmetricBandMatrix::SymmetricBandMatrix(std::size_t dimension, std::size_t bandwidth)
    : n_(dimension), bandwidth_(bandwidth), store_(bandwidth + 1), stride_(2 * (bandwidth + 1) + 1),
      data_(dimension * (2 * (bandwidth + 1) + 1), 0.0) {
  if (dimension == 0) throw ConfigError("band matrix: empty dimension");
}

void SymmetricBandMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) throw ConfigError("band matrix: index out of range");
  if ((i > j ? i - j : j - i) > bandwidth_)
    throw ConfigError("band matrix: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") lies outside bandwidth " + std::to_string(bandwidth_));
  at(i, j) = value;
  at(j, i) = value;
}

double SymmetricBandMatrix::get(std::size_t i, std::size_t j) const noexcept {
  if (i >= n_ || j >= n_ || !stored(i, j)) return 0.0;
  return at(i, j);
}

Matrix SymmetricBandMatrix::to_dense() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > bandwidth_ ? i - bandwidth_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + bandwidth_);
    for (std::size_t j = lo; j <= hi; ++j) m(i, j) = at(i, j);
  }
  return m;
}

struct BandReducer {
  SymmetricBandMatrix& a;

  // Similarity by the plane rotation that zeroes a(q, col) against a(p, col),
  // q = p + 1.
  void rotate(std::size_t p, std::size_t col) {
    const std::size_t q = p + 1;
    const double y = a.at(p, col);
    const double x = a.at(q, col);
    if (x == 0.0) return;
    const double r = std::hypot(y, x);
    const double c = y / r;
    const double s = x / r;

    const std::size_t n = a.n_;
    const std::size_t w = a.store_;
    const std::size_t lo = q > w ? q - w : 0;
    const std::size_t hi = std::min(n - 1, p + w);

    // rows p, q
    for (std::size_t j = lo; j <= hi; ++j) {
      const double ap = a.at(p, j);
      const double aq = a.at(q, j);
      a.at(p, j) = c * ap + s * aq;
      a.at(q, j) = -s * ap + c * aq;
    }
    // columns p, q
    for (std::size_t i = lo; i <= hi; ++i) {
      const double ap = a.at(i, p);
      const double aq = a.at(i, q);
      a.at(i, p) = c * ap + s * aq;
      a.at(i, q) = -s * ap + c * aq;
    }
    a.at(q, col) = 0.0;
    a.at(col, q) = 0.0;
  }

  void reduce() {
    const std::size_t n = a.n_;
    for (std::size_t m = a.bandwidth_; m >= 2; --m) {
      for (std::size_t k = 0; k + m < n; ++k) {
        if (a.at(k + m, k) == 0.0) continue;
        rotate(k + m - 1, k);
        // chase the bulge at (r + m, r - 1) down the band
        std::size_t r = k + m;
        while (r + m < n) {
          if (a.at(r + m, r - 1) == 0.0) break;
          rotate(r + m - 1, r - 1);
          r += m;
        }
      }
    }
  }
};

std::vector<double> SymmetricBandMatrix::eigenvalues() const {
  SymmetricBandMatrix work = *this;
  BandReducer{work}.reduce();
  std::vector<double> diag(n_), off(n_ > 0 ? n_ - 1 : 0);
  for (std::size_t i = 0; i < n_; ++i) diag[i] = work.at(i, i);
  for (std::size_t i = 0; i + 1 < n_; ++i) off[i] = work.at(i + 1, i);
  return tridiagonal_eigenvalues(std::move(diag), std::move(off));
}

} // namespace spectraflow
