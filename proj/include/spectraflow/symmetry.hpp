#pragma once

#include "spectraflow/hilbert.hpp"
#include "spectraflow/matrix.hpp"

#include <span>
#include <vector>

namespace spectraflow {

enum class Parity : int { Odd = -1, None = 0, Even = 1 };

struct ParityLabel {
  Parity value = Parity::None;
  double expectation = 0.0;
};

// |<P>| must exceed this for a definite label.
inline constexpr double kParityLabelThreshold = 1.0 - 1e-6;

// P = sigma_z ⊗ (-1)^{a†a}: diagonal, entry (-1)^n (2s - 1) at index 2n + s.
Matrix parity_operator(FockTruncation trunc);

// Diagonal of parity_operator without building the matrix.
std::vector<double> parity_diagonal(FockTruncation trunc);

// <v|P|v> and the resulting label. Throws ConfigError if ||v|| deviates from 1
// by more than 1e-10 or the dimension does not match.
ParityLabel parity_label(std::span<const double> v, const Matrix& parity);
ParityLabel parity_label(std::span<const double> v, std::span<const double> parity_diag);

struct SectorSpectra {
  std::vector<double> even;
  std::vector<double> odd;
};

// Diagonalizes H restricted to each parity eigenspace (dimension n_cut each).
// Requires epsilon == 0; throws ConfigError otherwise.
SectorSpectra sector_spectra(const ModelParams& p, FockTruncation trunc);

} // namespace spectraflow
