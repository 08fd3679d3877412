#include "spectraflow/spectra.hpp"

#include "spectraflow/eigensolve.hpp"
#include "spectraflow/errors.hpp"
#include "spectraflow/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>

namespace spectraflow {

namespace {

constexpr double kDegenerateRelTol = 1e-8;

double spectral_scale(std::span<const double> energies) {
  return energies.size() > 1 ? energies.back() - energies.front() : 1.0;
}

std::size_t resolve_workers(std::size_t requested) {
  return requested == 0 ? default_worker_count() : requested;
}

FlowPoint diagonalize_point(const ModelParams& p, double g, std::size_t levels, FockTruncation trunc,
                            std::span<const double> parity_diag) {
  const Matrix h = build_hamiltonian(p.with_g(g), trunc);
  const EigenDecomposition decomp = eigh(h);
  const std::size_t d = trunc.dimension();

  FlowPoint point;
  point.g = g;
  point.energies.assign(decomp.values.begin(), decomp.values.begin() + static_cast<std::ptrdiff_t>(levels));
  point.vectors = Matrix(levels, d);
  point.parity.resize(levels);
  point.slopes.resize(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    auto v = decomp.vector(i);
    std::copy(v.begin(), v.end(), point.vectors.row(i).begin());
    point.parity[i] = parity_label(v, parity_diag);
    point.slopes[i] = coupling_expectation(p.model, v);
  }
  return point;
}

// Sorted indices grouped into runs whose neighbouring gaps are below tol.
std::vector<std::vector<std::size_t>> degenerate_clusters(std::span<const double> energies, double tol) {
  std::vector<std::vector<std::size_t>> clusters;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= energies.size(); ++i) {
    if (i == energies.size() || energies[i] - energies[i - 1] > tol) {
      if (i - start > 1) {
        std::vector<std::size_t> c(i - start);
        std::iota(c.begin(), c.end(), start);
        clusters.push_back(std::move(c));
      }
      start = i;
    }
  }
  return clusters;
}

} // namespace

std::size_t SpectralFlow::sorted_index(std::size_t k, std::size_t line) const {
  const auto& ids = line_ids.at(k);
  auto it = std::find(ids.begin(), ids.end(), line);
  if (it == ids.end()) throw ConfigError("unknown line id " + std::to_string(line));
  return static_cast<std::size_t>(it - ids.begin());
}

std::size_t SpectralFlow::unresolved_count() const {
  return static_cast<std::size_t>(std::count(unresolved.begin(), unresolved.end(), true));
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t steps) {
  if (steps < 2) throw ConfigError("uniform_grid: need at least 2 points");
  if (!(lo < hi)) throw ConfigError("uniform_grid: lower bound must be below upper bound");
  std::vector<double> grid(steps);
  const double step = (hi - lo) / static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) grid[k] = lo + step * static_cast<double>(k);
  grid.back() = hi;
  return grid;
}

SpectralFlow sweep(const ModelParams& p, std::span<const double> g_grid, std::size_t levels,
                   FockTruncation trunc, const SweepOptions& options) {
  p.validate();
  if (g_grid.empty()) throw ConfigError("sweep: empty coupling grid");
  for (std::size_t k = 1; k < g_grid.size(); ++k)
    if (!(g_grid[k] > g_grid[k - 1])) throw ConfigError("sweep: coupling grid must be strictly ascending");
  if (levels == 0) throw ConfigError("sweep: need at least one level");
  if (levels > trunc.n_cut())
    throw ConfigError("sweep: " + std::to_string(levels) + " levels exceed half the truncated dimension (n_cut = " +
                      std::to_string(trunc.n_cut()) + ")");

  SpectralFlow flow;
  flow.params = p;
  flow.trunc = trunc;
  flow.levels = levels;
  flow.points.resize(g_grid.size());
  const auto parity_diag = parity_diagonal(trunc);

  parallel_for(g_grid.size(), resolve_workers(options.workers), [&](std::size_t k) {
    try {
      flow.points[k] = diagonalize_point(p, g_grid[k], levels, trunc, parity_diag);
    } catch (const NumericalError& e) {
      throw NumericalError("sweep: grid index " + std::to_string(k) + " (g = " + std::to_string(g_grid[k]) +
                           "): " + e.what());
    }
  });
  return flow;
}

SpectralFlow track_lines(SpectralFlow flow) {
  const std::size_t count = flow.points.size();
  const std::size_t m = flow.levels;
  flow.line_ids.assign(count, std::vector<std::size_t>(m));
  flow.unresolved.assign(count > 0 ? count - 1 : 0, false);
  if (count == 0) return flow;
  std::iota(flow.line_ids[0].begin(), flow.line_ids[0].end(), std::size_t{0});

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(m * m);
  for (std::size_t k = 0; k + 1 < count; ++k) {
    const FlowPoint& cur = flow.points[k];
    const FlowPoint& nxt = flow.points[k + 1];

    pairs.clear();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        pairs.emplace_back(std::abs(dot(cur.vectors.row(i), nxt.vectors.row(j))), i, j);
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });

    std::vector<std::size_t> target(m, m);
    std::vector<bool> taken(m, false);
    double worst = 1.0;
    std::size_t assigned = 0;
    for (const auto& [overlap, i, j] : pairs) {
      if (target[i] != m || taken[j]) continue;
      target[i] = j;
      taken[j] = true;
      worst = std::min(worst, overlap);
      if (++assigned == m) break;
    }
    flow.unresolved[k] = worst < kMinTrackingOverlap;

    // Degenerate cluster at point k: reorder by extrapolated slope.
    if (k > 0) {
      const FlowPoint& prev = flow.points[k - 1];
      const double tol = kDegenerateRelTol * std::max(1.0, spectral_scale(cur.energies));
      const double ratio = (nxt.g - cur.g) / (cur.g - prev.g);
      for (const auto& cluster : degenerate_clusters(cur.energies, tol)) {
        std::vector<std::pair<double, std::size_t>> predicted;  // (E_pred, sorted index at k)
        std::vector<std::size_t> targets;
        for (std::size_t i : cluster) {
          const std::size_t line = flow.line_ids[k][i];
          const double before = prev.energies[flow.sorted_index(k - 1, line)];
          predicted.emplace_back(cur.energies[i] + (cur.energies[i] - before) * ratio, i);
          targets.push_back(target[i]);
        }
        std::stable_sort(predicted.begin(), predicted.end());
        std::sort(targets.begin(), targets.end());
        for (std::size_t r = 0; r < predicted.size(); ++r) target[predicted[r].second] = targets[r];
      }
    }

    for (std::size_t i = 0; i < m; ++i) flow.line_ids[k + 1][target[i]] = flow.line_ids[k][i];
  }
  return flow;
}

std::string_view to_string(CrossingKind kind) noexcept {
  return kind == CrossingKind::TrueCrossing ? "TRUE_CROSSING" : "AVOIDED";
}

std::size_t CrossingScan::true_crossings() const {
  return static_cast<std::size_t>(std::count_if(crossings.begin(), crossings.end(), [](const Crossing& c) {
    return c.kind == CrossingKind::TrueCrossing;
  }));
}

namespace {

struct Candidate {
  std::size_t lower_index;
  std::size_t grid_index;  // interior grid point holding the local minimum
};

struct Refined {
  std::optional<Crossing> crossing;
  std::optional<CrossingFailure> failure;
};

Refined refine_candidate(const SpectralFlow& flow, const Candidate& cand, const CrossingOptions& options) {
  const std::size_t i = cand.lower_index;
  const std::size_t k = cand.grid_index;
  const double lo = flow.points[k - 1].g;
  const double hi = flow.points[k + 1].g;

  auto spectrum = [&](double g) { return build_hamiltonian_band(flow.params.with_g(g), flow.trunc).eigenvalues(); };
  auto gap = [&](double g) {
    const auto e = spectrum(g);
    return e[i + 1] - e[i];
  };

  Refined out;
  try {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = gap(c), fd = gap(d);
    while (b - a > options.g_resolution) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = gap(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = gap(d);
      }
    }
    const double g_star = fc < fd ? c : d;
    if (g_star - lo <= options.g_resolution || hi - g_star <= options.g_resolution) {
      out.failure = CrossingFailure{i, lo, hi, "gap minimum sits on the bracket edge"};
      return out;
    }

    const auto e = spectrum(g_star);
    const std::size_t m = flow.levels;
    Crossing x;
    x.g_star = g_star;
    x.lower_index = i;
    x.min_gap = std::max(0.0, e[i + 1] - e[i]);
    x.energy = 0.5 * (e[i] + e[i + 1]);
    x.spectral_scale = e[m - 1] - e[0];
    x.kind = x.min_gap < options.relative_tolerance * x.spectral_scale ? CrossingKind::TrueCrossing
                                                                      : CrossingKind::Avoided;
    x.line_a = flow.line_ids[k - 1][i];
    x.line_b = flow.line_ids[k - 1][i + 1];
    x.parity_a = flow.points[k - 1].parity[i].value;
    x.parity_b = flow.points[k - 1].parity[i + 1].value;
    out.crossing = x;
  } catch (const std::exception& ex) {
    out.failure = CrossingFailure{i, lo, hi, ex.what()};
  }
  return out;
}

} // namespace

CrossingScan find_crossings(const SpectralFlow& flow, const CrossingOptions& options) {
  if (!flow.tracked()) throw ConfigError("find_crossings: flow has no line identities; run track_lines first");
  if (flow.levels < 2) return {};

  std::vector<Candidate> candidates;
  const std::size_t count = flow.points.size();
  for (std::size_t i = 0; i + 1 < flow.levels; ++i) {
    auto gap = [&](std::size_t k) { return flow.points[k].energies[i + 1] - flow.points[k].energies[i]; };
    for (std::size_t k = 1; k + 1 < count; ++k)
      if (gap(k) < gap(k - 1) && gap(k) <= gap(k + 1)) candidates.push_back({i, k});
  }

  std::vector<Refined> refined(candidates.size());
  parallel_for(candidates.size(), resolve_workers(options.workers),
               [&](std::size_t c) { refined[c] = refine_candidate(flow, candidates[c], options); });

  CrossingScan scan;
  for (auto& r : refined) {
    if (r.failure) scan.failures.push_back(std::move(*r.failure));
    if (!r.crossing) continue;
    // Neighbouring brackets overlap, so one minimum can be found twice.
    const bool duplicate = std::any_of(scan.crossings.begin(), scan.crossings.end(), [&](const Crossing& c) {
      return c.lower_index == r.crossing->lower_index &&
             std::abs(c.g_star - r.crossing->g_star) < 10.0 * options.g_resolution;
    });
    if (!duplicate) scan.crossings.push_back(*r.crossing);
  }
  std::stable_sort(scan.crossings.begin(), scan.crossings.end(), [](const Crossing& a, const Crossing& b) {
    return a.g_star != b.g_star ? a.g_star < b.g_star : a.lower_index < b.lower_index;
  });
  return scan;
}

ConvergenceResult converge_truncation(const ModelParams& p, std::size_t levels, double tol, double g_max) {
  p.validate();
  if (!(tol > 0.0)) throw ConfigError("converge_truncation: tolerance must be positive");
  if (levels == 0) throw ConfigError("converge_truncation: need at least one level");
  if (!std::isfinite(g_max)) throw ConfigError("converge_truncation: g_max must be finite");

  auto lowest = [&](std::size_t n_cut) {
    auto e = build_hamiltonian_band(p.with_g(g_max), FockTruncation(n_cut)).eigenvalues();
    e.resize(levels);
    return e;
  };

  ConvergenceResult result;
  std::size_t n_cut = std::max<std::size_t>(2 * levels, 32);
  if (n_cut > kMaxFockCut)
    throw ConvergenceError("converge_truncation: starting n_cut " + std::to_string(n_cut) + " exceeds the cap " +
                           std::to_string(kMaxFockCut));
  std::vector<double> current = lowest(n_cut);
  while (true) {
    const std::size_t next = 2 * n_cut;
    if (next > kMaxFockCut)
      throw ConvergenceError("converge_truncation: lowest " + std::to_string(levels) + " levels at g = " +
                             std::to_string(g_max) + " not converged to " + std::to_string(tol) +
                             " before n_cut cap " + std::to_string(kMaxFockCut));
    std::vector<double> refined = lowest(next);
    double delta = 0.0;
    for (std::size_t i = 0; i < levels; ++i) delta = std::max(delta, std::abs(refined[i] - current[i]));
    result.history.push_back({n_cut, next, delta});
    if (delta < tol) {
      result.n_cut = n_cut;
      result.energies = std::move(current);
      return result;
    }
    n_cut = next;
    current = std::move(refined);
  }
}

} // namespace spectraflow
