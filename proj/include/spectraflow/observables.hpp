#pragma once

#include "spectraflow/hilbert.hpp"
#include "spectraflow/spectra.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace spectraflow {

// Reduced density matrix of the atom, basis (|g>, |e>). Joint eigenvectors
// are real, so rho is real symmetric and its imaginary part vanishes
// identically.
struct AtomicState {
  std::array<std::array<double, 2>, 2> rho{};
  static constexpr bool imaginary_part_zero = true;

  double trace() const noexcept { return rho[0][0] + rho[1][1]; }
  double determinant() const noexcept { return rho[0][0] * rho[1][1] - rho[0][1] * rho[1][0]; }
};

struct PauliExpectations {
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;
};

// Uncertainty product Delta = dsx * dsy of the rescaled Pauli operators
// sigma~ = sigma / sqrt(2); 0 <= Delta <= 1/2.
struct UncertaintyRecord {
  double g = 0.0;
  std::size_t eigen_index = 0;
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;
  double dsx = 0.0;
  double dsy = 0.0;
  double delta = 0.0;
};

// Partial trace over the field: rho[s][s'] = sum_n v[2n+s] v[2n+s'].
// Throws ConfigError for odd length or ||v|| off 1 by more than 1e-10.
AtomicState atomic_reduced(std::span<const double> v);

PauliExpectations pauli_expectations(const AtomicState& state);

// Uses <sigma~^2> = 1/2 exactly, so dsx = sqrt((1 - sx^2) / 2) and likewise
// for y. g and eigen_index are left for the caller.
UncertaintyRecord uncertainty_product(const AtomicState& state);

// Records for the lowest M states at each grid point of a flow, g-major.
std::vector<UncertaintyRecord> uncertainty_records(const SpectralFlow& flow);

// Sweeps the coupling grid and returns one record per (g, eigen_index).
std::vector<UncertaintyRecord> uncertainty_sweep(const ModelParams& p, std::span<const double> g_grid,
                                                 std::size_t levels, FockTruncation trunc,
                                                 const SweepOptions& options = {});

struct Histogram {
  std::vector<double> edges;  // n_bins + 1 uniform edges over [0, 0.5]
  std::vector<std::size_t> counts;
  std::vector<double> probabilities;

  std::size_t bins() const noexcept { return counts.size(); }
  std::size_t total() const noexcept;
  std::size_t modal_bin() const noexcept;  // first bin with the largest count
};

inline constexpr double kDeltaCeiling = 0.5;

// Uniform bins over [0, 0.5]; bins are half-open except the last, which is
// closed. Throws ConfigError for n_bins < 2, no records, or a delta outside
// [0, 0.5] by more than 1e-12 (values within that slack are clamped).
Histogram histogram(std::span<const UncertaintyRecord> records, std::size_t n_bins);
Histogram histogram(std::span<const double> deltas, std::size_t n_bins);

struct DeltaStatistics {
  double mean = 0.0;
  double variance = 0.0;  // population variance
  double min = 0.0;
  double max = 0.0;
};

DeltaStatistics delta_statistics(std::span<const UncertaintyRecord> records);

} // namespace spectraflow
