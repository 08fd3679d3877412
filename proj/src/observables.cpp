#include "spectraflow/observables.hpp"

#include "spectraflow/errors.hpp"

#include <algorithm>
#include <cmath>

namespace spectraflow {

AtomicState atomic_reduced(std::span<const double> v) {
  if (v.size() % 2 != 0 || v.empty()) throw ConfigError("atomic_reduced: vector length must be even and nonzero");
  if (std::abs(norm2(v) - 1.0) > 1e-10) throw ConfigError("atomic_reduced: vector is not normalized");
  AtomicState state;
  double gg = 0.0, ee = 0.0, ge = 0.0;
  for (std::size_t n = 0; n < v.size() / 2; ++n) {
    const double g = v[FockTruncation::index(n, 0)];
    const double e = v[FockTruncation::index(n, 1)];
    gg += g * g;
    ee += e * e;
    ge += g * e;
  }
  state.rho = {{{gg, ge}, {ge, ee}}};
  return state;
}

PauliExpectations pauli_expectations(const AtomicState& state) {
  const auto& r = state.rho;
  return {2.0 * r[0][1], 0.0, r[1][1] - r[0][0]};
}

UncertaintyRecord uncertainty_product(const AtomicState& state) {
  const PauliExpectations p = pauli_expectations(state);
  UncertaintyRecord rec;
  rec.sx = p.sx;
  rec.sy = p.sy;
  rec.sz = p.sz;
  // <sigma~_x> = sx / sqrt(2), so the variance is (1 - sx^2) / 2
  rec.dsx = std::sqrt(std::max(0.0, 0.5 * (1.0 - p.sx * p.sx)));
  rec.dsy = std::sqrt(std::max(0.0, 0.5 * (1.0 - p.sy * p.sy)));
  rec.delta = rec.dsx * rec.dsy;
  return rec;
}

std::vector<UncertaintyRecord> uncertainty_records(const SpectralFlow& flow) {
  std::vector<UncertaintyRecord> records;
  records.reserve(flow.points.size() * flow.levels);
  for (const FlowPoint& point : flow.points) {
    for (std::size_t i = 0; i < point.energies.size(); ++i) {
      UncertaintyRecord rec = uncertainty_product(atomic_reduced(point.vectors.row(i)));
      rec.g = point.g;
      rec.eigen_index = i;
      records.push_back(rec);
    }
  }
  return records;
}

std::vector<UncertaintyRecord> uncertainty_sweep(const ModelParams& p, std::span<const double> g_grid,
                                                 std::size_t levels, FockTruncation trunc,
                                                 const SweepOptions& options) {
  return uncertainty_records(sweep(p, g_grid, levels, trunc, options));
}

std::size_t Histogram::total() const noexcept {
  std::size_t t = 0;
  for (std::size_t c : counts) t += c;
  return t;
}

std::size_t Histogram::modal_bin() const noexcept {
  return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

Histogram histogram(std::span<const double> deltas, std::size_t n_bins) {
  if (n_bins < 2) throw ConfigError("histogram: need at least 2 bins");
  if (deltas.empty()) throw ConfigError("histogram: no records");

  Histogram h;
  h.edges.resize(n_bins + 1);
  for (std::size_t b = 0; b <= n_bins; ++b)
    h.edges[b] = kDeltaCeiling * static_cast<double>(b) / static_cast<double>(n_bins);
  h.counts.assign(n_bins, 0);

  for (double delta : deltas) {
    if (!(delta >= -1e-12 && delta <= kDeltaCeiling + 1e-12))
      throw ConfigError("histogram: uncertainty product " + std::to_string(delta) + " outside [0, 0.5]");
    const double x = std::clamp(delta, 0.0, kDeltaCeiling);
    auto bin = static_cast<std::size_t>(x / kDeltaCeiling * static_cast<double>(n_bins));
    bin = std::min(bin, n_bins - 1);
    // guard against rounding in the division placing x below its lower edge
    while (bin > 0 && x < h.edges[bin]) --bin;
    while (bin + 1 < n_bins && x >= h.edges[bin + 1]) ++bin;
    ++h.counts[bin];
  }

  const double total = static_cast<double>(deltas.size());
  h.probabilities.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) h.probabilities[b] = static_cast<double>(h.counts[b]) / total;
  return h;
}

Histogram histogram(std::span<const UncertaintyRecord> records, std::size_t n_bins) {
  std::vector<double> deltas;
  deltas.reserve(records.size());
  for (const auto& r : records) deltas.push_back(r.delta);
  return histogram(deltas, n_bins);
}

DeltaStatistics delta_statistics(std::span<const UncertaintyRecord> records) {
  if (records.empty()) throw ConfigError("delta_statistics: no records");
  DeltaStatistics s;
  s.min = s.max = records.front().delta;
  for (const auto& r : records) {
    s.mean += r.delta;
    s.min = std::min(s.min, r.delta);
    s.max = std::max(s.max, r.delta);
  }
  s.mean /= static_cast<double>(records.size());
  for (const auto& r : records) s.variance += (r.delta - s.mean) * (r.delta - s.mean);
  s.variance /= static_cast<double>(records.size());
  return s;
}

} // namespace spectraflow
