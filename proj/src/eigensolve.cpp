#include "spectraflow/eigensolve.hpp"

#include "spectraflow/band.hpp"
#include "spectraflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace spectraflow {

namespace {

// Working storage for the reduction. w holds the transpose of the classic
// column-oriented accumulator so every inner loop runs over contiguous memory;
// since the input is symmetric the initial contents are the same either way.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
  Matrix w;
};

Tridiagonal householder_reduce(const Matrix& a, bool accumulate) {
  const std::size_t n = a.rows();
  Tridiagonal t{std::vector<double>(n), std::vector<double>(n), a};
  auto& d = t.diag;
  auto& e = t.off;
  Matrix& w = t.w;

  for (std::size_t j = 0; j < n; ++j) d[j] = w(j, n - 1);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);

    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = w(j, i - 1);
        w(j, i) = 0.0;
        w(i, j) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      std::fill(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(i), 0.0);

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        w(i, j) = f;
        g = e[j] + w(j, j) * f;
        auto wj = w.row(j);
        for (std::size_t k = j + 1; k < i; ++k) {
          g += wj[k] * d[k];
          e[k] += wj[k] * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        auto wj = w.row(j);
        for (std::size_t k = j; k < i; ++k) wj[k] -= (f * e[k] + g * d[k]);
        d[j] = w(j, i - 1);
        w(j, i) = 0.0;
      }
    }
    d[i] = h;
  }

  if (accumulate) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      w(i, n - 1) = w(i, i);
      w(i, i) = 1.0;
      const double h = d[i + 1];
      auto wnext = w.row(i + 1);
      if (h != 0.0) {
        for (std::size_t k = 0; k <= i; ++k) d[k] = wnext[k] / h;
        for (std::size_t j = 0; j <= i; ++j) {
          auto wj = w.row(j);
          double g = 0.0;
          for (std::size_t k = 0; k <= i; ++k) g += wnext[k] * wj[k];
          for (std::size_t k = 0; k <= i; ++k) wj[k] -= g * d[k];
        }
      }
      for (std::size_t k = 0; k <= i; ++k) wnext[k] = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
      d[j] = w(j, n - 1);
      w(j, n - 1) = 0.0;
    }
    w(n - 1, n - 1) = 1.0;
  } else {
    for (std::size_t j = 0; j < n; ++j) d[j] = w(j, j);
  }
  e[0] = 0.0;
  return t;
}

// Implicit QL on the tridiagonal form. Rotations are applied to rows of w,
// which then hold the eigenvectors.
void implicit_ql(Tridiagonal& t, bool vectors, int max_sweeps) {
  auto& d = t.diag;
  auto& e = t.off;
  const std::size_t n = d.size();

  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }

    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > max_sweeps) {
          throw NumericalError("eigh: eigenvalue " + std::to_string(l) + " did not converge within " +
                               std::to_string(max_sweeps) + " QL sweeps");
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (vectors) {
            auto vi = t.w.row(i);
            auto vi1 = t.w.row(i + 1);
            for (std::size_t k = 0; k < n; ++k) {
              const double hk = vi1[k];
              vi1[k] = s * vi[k] + c * hk;
              vi[k] = c * vi[k] - s * hk;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

void check_input(const Matrix& h) {
  if (!h.square()) throw ConfigError("eigh: matrix is not square");
  if (h.rows() == 0) throw ConfigError("eigh: empty matrix");
  if (h.rows() > kMaxEigenDimension)
    throw ConfigError("eigh: dimension " + std::to_string(h.rows()) + " exceeds the supported maximum " +
                      std::to_string(kMaxEigenDimension));
  for (double x : h.data())
    if (!std::isfinite(x)) throw ConfigError("eigh: matrix has non-finite entries");
  if (!is_symmetric(h)) throw ConfigError("eigh: matrix is not symmetric");
}

} // namespace

std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off, int max_sweeps) {
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (off.size() + 1 != n) throw ConfigError("tridiagonal_eigenvalues: off-diagonal must have n - 1 entries");
  Tridiagonal t{std::move(diag), std::vector<double>(n, 0.0), Matrix()};
  for (std::size_t i = 0; i + 1 < n; ++i) t.off[i + 1] = off[i];
  implicit_ql(t, false, max_sweeps);
  std::sort(t.diag.begin(), t.diag.end());
  return std::move(t.diag);
}

EigenDecomposition eigh(const Matrix& h, const EigenOptions& options) {
  check_input(h);
  const std::size_t n = h.rows();
  if (n == 1) {
    EigenDecomposition out{{h(0, 0)}, Matrix(options.compute_vectors ? 1 : 0, options.compute_vectors ? 1 : 0, 1.0)};
    return out;
  }

  Tridiagonal t = householder_reduce(h, options.compute_vectors);
  implicit_ql(t, options.compute_vectors, options.max_sweeps);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return t.diag[a] < t.diag[b]; });

  EigenDecomposition out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = t.diag[order[i]];
  if (!options.compute_vectors) return out;

  out.vectors = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto src = t.w.row(order[i]);
    auto dst = out.vectors.row(i);
    std::size_t pivot = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (std::abs(src[k]) > std::abs(src[pivot])) pivot = k;
    const double sign = src[pivot] < 0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) dst[k] = sign * src[k];
  }
  return out;
}

std::vector<double> eigvalsh(const Matrix& h) {
  EigenOptions opts;
  opts.compute_vectors = false;
  return eigh(h, opts).values;
}

ValidationReport validate(const Matrix& h, const EigenDecomposition& decomp) {
  const std::size_t n = h.rows();
  if (!h.square() || decomp.values.size() != n || decomp.vectors.rows() != n || decomp.vectors.cols() != n)
    throw ConfigError("validate: dimension mismatch between matrix and decomposition");

  ValidationReport report;
  report.frobenius = h.frobenius_norm();
  std::vector<double> hv(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = decomp.vector(i);
    double r2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double x = dot(h.row(k), v) - decomp.values[i] * v[k];
      r2 += x * x;
    }
    report.max_residual = std::max(report.max_residual, std::sqrt(r2));
    for (std::size_t j = i; j < n; ++j) {
      const double overlap = dot(v, decomp.vector(j)) - (i == j ? 1.0 : 0.0);
      report.max_orthonormality = std::max(report.max_orthonormality, std::abs(overlap));
    }
  }
  return report;
}

double reconstruction_error(const Matrix& h, const EigenDecomposition& decomp) {
  const std::size_t n = h.rows();
  if (decomp.vectors.rows() != n || decomp.vectors.cols() != n)
    throw ConfigError("reconstruction_error: dimension mismatch");
  // R = V^T diag(lambda) V, accumulated as a sum of rank-one terms
  Matrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = decomp.vector(i);
    const double lam = decomp.values[i];
    for (std::size_t a = 0; a < n; ++a) {
      const double s = lam * v[a];
      auto row = r.row(a);
      for (std::size_t b = 0; b < n; ++b) row[b] += s * v[b];
    }
  }
  r -= h;
  return r.frobenius_norm();
}

} // namespace spectraflow
