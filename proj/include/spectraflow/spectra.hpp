#pragma once

#include "spectraflow/hilbert.hpp"
#include "spectraflow/matrix.hpp"
#include "spectraflow/symmetry.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace spectraflow {

inline constexpr std::size_t kMaxFockCut = 2048;
inline constexpr double kMinTrackingOverlap = 0.5;

// Lowest-M spectral data at one coupling value.
struct FlowPoint {
  double g = 0.0;
  std::vector<double> energies;       // ascending
  Matrix vectors;                     // row i = eigenvector of energies[i]
  std::vector<ParityLabel> parity;
  std::vector<double> slopes;         // <v_i| dH/dg |v_i>
};

struct SpectralFlow {
  ModelParams params;
  FockTruncation trunc{2};
  std::size_t levels = 0;
  std::vector<FlowPoint> points;
  // line_ids[k][i]: persistent line identity of sorted level i at point k.
  std::vector<std::vector<std::size_t>> line_ids;
  // unresolved[k]: matching between points k and k+1 fell below the overlap floor.
  std::vector<bool> unresolved;

  bool tracked() const noexcept { return !points.empty() && line_ids.size() == points.size(); }
  std::size_t sorted_index(std::size_t k, std::size_t line) const;
  double line_energy(std::size_t k, std::size_t line) const { return points[k].energies[sorted_index(k, line)]; }
  std::size_t unresolved_count() const;
};

struct SweepOptions {
  std::size_t workers = 0;  // 0: default_worker_count()
};

// Uniformly spaced grid with `steps` points including both ends.
std::vector<double> uniform_grid(double lo, double hi, std::size_t steps);

// Diagonalizes H(g) at each grid point and keeps the lowest `levels` states.
// Requires a strictly ascending grid and levels <= n_cut. Solver failures are
// rethrown as NumericalError naming the grid index.
SpectralFlow sweep(const ModelParams& p, std::span<const double> g_grid, std::size_t levels,
                   FockTruncation trunc, const SweepOptions& options = {});

// Assigns persistent line identities by greedy eigenvector-overlap matching.
// Inside a degenerate cluster the overlap is meaningless, so identities are
// carried across by slope extrapolation from the two preceding points.
SpectralFlow track_lines(SpectralFlow flow);

enum class CrossingKind { TrueCrossing, Avoided };
std::string_view to_string(CrossingKind kind) noexcept;

struct Crossing {
  double g_star = 0.0;
  double energy = 0.0;
  std::size_t line_a = 0;  // lower line just left of the crossing
  std::size_t line_b = 0;
  std::size_t lower_index = 0;  // sorted index of the lower of the two levels
  double min_gap = 0.0;
  double spectral_scale = 0.0;  // E_{M-1} - E_0 at g_star
  CrossingKind kind = CrossingKind::Avoided;
  Parity parity_a = Parity::None;
  Parity parity_b = Parity::None;
};

struct CrossingFailure {
  std::size_t lower_index = 0;
  double g_lo = 0.0;
  double g_hi = 0.0;
  std::string reason;
};

struct CrossingScan {
  std::vector<Crossing> crossings;  // sorted by g_star
  std::vector<CrossingFailure> failures;
  std::size_t true_crossings() const;
};

struct CrossingOptions {
  double g_resolution = 1e-9;
  double relative_tolerance = 1e-8;  // TRUE_CROSSING iff min_gap < this * spectral_scale
  std::size_t workers = 0;
};

// Finds interior local minima of every adjacent gap on the grid, refines each
// by golden-section search on freshly computed spectra and classifies it.
CrossingScan find_crossings(const SpectralFlow& flow, const CrossingOptions& options = {});

struct ConvergenceStep {
  std::size_t n_cut = 0;
  std::size_t next_n_cut = 0;
  double max_delta = 0.0;
};

struct ConvergenceResult {
  std::size_t n_cut = 0;
  std::vector<ConvergenceStep> history;
  std::vector<double> energies;  // lowest M at the returned n_cut
};

// Doubles n_cut from max(2M, 32) until the lowest M eigenvalues at g_max move
// by less than tol between consecutive truncations. Throws ConvergenceError
// when the next doubling would exceed kMaxFockCut.
ConvergenceResult converge_truncation(const ModelParams& p, std::size_t levels, double tol, double g_max);

} // namespace spectraflow
