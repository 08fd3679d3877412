#include "spectraflow/symmetry.hpp"

#include "spectraflow/eigensolve.hpp"
#include "spectraflow/errors.hpp"

#include <cmath>

namespace spectraflow {

std::vector<double> parity_diagonal(FockTruncation trunc) {
  std::vector<double> diag(trunc.dimension());
  for (std::size_t n = 0; n < trunc.n_cut(); ++n) {
    const double field = (n % 2 == 0) ? 1.0 : -1.0;
    diag[FockTruncation::index(n, 0)] = -field;
    diag[FockTruncation::index(n, 1)] = field;
  }
  return diag;
}

Matrix parity_operator(FockTruncation trunc) {
  const auto diag = parity_diagonal(trunc);
  return Matrix::diagonal(diag);
}

ParityLabel parity_label(std::span<const double> v, std::span<const double> parity_diag) {
  if (v.size() != parity_diag.size()) throw ConfigError("parity_label: dimension mismatch");
  double norm_sq = 0.0;
  double expectation = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    norm_sq += v[k] * v[k];
    expectation += parity_diag[k] * v[k] * v[k];
  }
  if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-10) throw ConfigError("parity_label: vector is not normalized");

  ParityLabel label;
  label.expectation = expectation;
  if (expectation > kParityLabelThreshold)
    label.value = Parity::Even;
  else if (expectation < -kParityLabelThreshold)
    label.value = Parity::Odd;
  return label;
}

ParityLabel parity_label(std::span<const double> v, const Matrix& parity) {
  if (!parity.square() || parity.rows() != v.size()) throw ConfigError("parity_label: dimension mismatch");
  std::vector<double> diag(parity.rows());
  for (std::size_t k = 0; k < diag.size(); ++k) diag[k] = parity(k, k);
  return parity_label(v, diag);
}

SectorSpectra sector_spectra(const ModelParams& p, FockTruncation trunc) {
  if (p.epsilon != 0.0) throw ConfigError("sector_spectra: parity is broken for epsilon != 0");
  const Matrix h = build_hamiltonian(p, trunc);
  const auto diag = parity_diagonal(trunc);

  std::vector<std::size_t> even_idx, odd_idx;
  for (std::size_t k = 0; k < diag.size(); ++k) (diag[k] > 0 ? even_idx : odd_idx).push_back(k);

  auto block = [&](const std::vector<std::size_t>& idx) {
    Matrix b(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = h(idx[i], idx[j]);
    return eigvalsh(b);
  };
  return {block(even_idx), block(odd_idx)};
}

} // namespace spectraflow
