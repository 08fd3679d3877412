// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include "spectraflow/commands.hpp"
#include "spectraflow/config.hpp"
#include "spectraflow/eigensolve.hpp"
#include "spectraflow/hilbert.hpp"
#include "spectraflow/observables.hpp"
#include "spectraflow/spectra.hpp"
#include "spectraflow/symmetry.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace spectraflow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Every uncertainty record produced anywhere in the suite, for criterion 7.
std::vector<UncertaintyRecord> g_all_records;

void collect(const SpectralFlow& flow) {
  const auto recs = uncertainty_records(flow);
  g_all_records.insert(g_all_records.end(), recs.begin(), recs.end());
}

ModelParams model(ModelKind kind, double eps = 0.0, double g = 0.0) {
  ModelParams p;
  p.model = kind;
  p.epsilon = eps;
  p.g = g;
  return p;
}

// 1. Eigensolver contract on seeded random matrices.
Outcome eigensolver_contract() {
  Outcome o;
  double worst_res = 0.0, worst_orth = 0.0, worst_rec = 0.0, t400 = 0.0;
  for (std::size_t d : {50u, 200u, 400u}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Matrix h = oracle::random_symmetric(d, 1000 * d + seed);
      const auto t0 = Clock::now();
      const auto e = eigh(h);
      if (d == 400) t400 = std::max(t400, seconds_since(t0));
      const auto r = validate(h, e);
      worst_res = std::max(worst_res, r.max_residual / r.frobenius);
      worst_orth = std::max(worst_orth, r.max_orthonormality);
      worst_rec = std::max(worst_rec, reconstruction_error(h, e) / r.frobenius);
    }
  }
  o.require(worst_res <= 1e-10, "residual");
  o.require(worst_orth <= 1e-10, "orthonormality");
  o.require(worst_rec <= 1e-9, "reconstruction");
  o.require(t400 <= 10.0, "d=400 runtime");
  o.note("60 matrices; max rel residual " + num(worst_res) + ", orth " + num(worst_orth) + ", recon " +
         num(worst_rec) + ", slowest d=400 eigh " + num(t400) + " s");
  return o;
}

// 2. JC spectrum against the analytic dressed-state energies.
Outcome jc_analytic() {
  Outcome o;
  double worst = 0.0;
  for (double g : {0.2, 0.5, 1.0}) {
    auto values = eigh(build_hamiltonian(model(ModelKind::JaynesCummings, 0.0, g), FockTruncation(200))).values;
    values.resize(50);
    worst = std::max(worst, oracle::max_abs_diff(values, oracle::jc_energies(1.0, 1.0, g, 50)));
  }
  o.require(worst <= 1e-8, "JC lowest 50 within 1e-8");
  o.note("max |E - E_analytic| = " + num(worst));
  return o;
}

// 3. Uncoupled spectrum n ± sqrt(1/4 + eps^2).
Outcome uncoupled_closed_form() {
  Outcome o;
  double worst = 0.0;
  for (double eps : {0.0, 0.3, 0.5}) {
    auto values = eigvalsh(build_hamiltonian(model(ModelKind::AsymmetricRabi, eps), FockTruncation(40)));
    values.resize(20);
    worst = std::max(worst, oracle::max_abs_diff(values, oracle::uncoupled_energies(1.0, 1.0, eps, 20)));
  }
  o.require(worst <= 1e-10, "g = 0 lowest 20 within 1e-10");
  o.note("max deviation " + num(worst));
  return o;
}

// 4. Excitation number for JC, parity for Rabi, and the parity-sector spectra.
Outcome conserved_quantities() {
  Outcome o;
  const FockTruncation trunc(120);
  const Matrix hjc = build_hamiltonian(model(ModelKind::JaynesCummings, 0.0, 0.5), trunc);
  const double n_comm = commutator(excitation_number(trunc), hjc).frobenius_norm() / hjc.frobenius_norm();
  const Matrix hr = build_hamiltonian(model(ModelKind::Rabi, 0.0, 0.8), trunc);
  const double p_comm = commutator(parity_operator(trunc), hr).frobenius_norm() / hr.frobenius_norm();

  const ModelParams rabi = model(ModelKind::Rabi, 0.0, 1.0);
  const auto sectors = sector_spectra(rabi, trunc);
  std::vector<double> joined = sectors.even;
  joined.insert(joined.end(), sectors.odd.begin(), sectors.odd.end());
  const double sector_dist = oracle::multiset_distance(joined, eigvalsh(build_hamiltonian(rabi, trunc)));

  o.require(n_comm <= 1e-12, "[N, H_JC]");
  o.require(p_comm <= 1e-12, "[P, H_R]");
  o.require(sector_dist <= 1e-9, "sector spectra");
  o.note("||[N,H_JC]||/||H|| = " + num(n_comm) + ", ||[P,H_R]||/||H|| = " + num(p_comm) + ", sector distance " +
         num(sector_dist));
  return o;
}

// 5. JC crossing location and grid-halving stability.
Outcome crossing_detector() {
  Outcome o;
  const ModelParams jc = model(ModelKind::JaynesCummings);
  const FockTruncation trunc(40);
  const auto coarse = find_crossings(track_lines(sweep(jc, uniform_grid(0.0, 1.5, 151), 5, trunc)));
  const auto fine = find_crossings(track_lines(sweep(jc, uniform_grid(0.0, 1.5, 301), 5, trunc)));

  const double target = std::sqrt(2.0) - 1.0;
  const Crossing* hit = nullptr;
  for (const auto& c : coarse.crossings)
    if (c.kind == CrossingKind::TrueCrossing && std::abs(c.g_star - target) < 1e-3) hit = &c;
  o.require(hit != nullptr, "crossing near sqrt(2) - 1 found");
  if (hit) {
    o.require(std::abs(hit->g_star - target) <= 1e-6, "g_star within 1e-6");
    o.require(std::abs(hit->energy - 0.9142135624) <= 1e-6, "energy within 1e-6");
    o.note("g_star = " + std::to_string(hit->g_star) + " (err " + num(std::abs(hit->g_star - target)) +
           "), energy err " + num(std::abs(hit->energy - 0.9142135624)));
  }

  double worst_shift = 0.0;
  std::size_t matched = 0;
  for (const auto& c : coarse.crossings) {
    if (c.kind != CrossingKind::TrueCrossing) continue;
    double best = INFINITY;
    for (const auto& f : fine.crossings)
      if (f.kind == CrossingKind::TrueCrossing && f.lower_index == c.lower_index)
        best = std::min(best, std::abs(f.g_star - c.g_star));
    worst_shift = std::max(worst_shift, best);
    ++matched;
  }
  o.require(matched > 0 && worst_shift <= 1e-6, "grid halving moves g_star by <= 1e-6");
  o.require(coarse.true_crossings() == fine.true_crossings(), "same TRUE_CROSSING count on both grids");
  o.note(std::to_string(matched) + " JC crossings, max shift under halving " + num(worst_shift));
  return o;
}

std::vector<SpectralFlow> g_epsilon_flows;  // eps = 0, 0.3, 0.5 (reused by criterion 9)

// 6. Level crossings versus epsilon.
Outcome crossings_vs_epsilon() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto grid = uniform_grid(0.0, 1.5, 151);
  std::size_t counts[3] = {0, 0, 0};
  const double eps_values[3] = {0.0, 0.3, 0.5};
  bool parity_ok = true;
  std::string ncuts;
  for (int which = 0; which < 3; ++which) {
    const ModelParams p = model(ModelKind::AsymmetricRabi, eps_values[which]);
    const auto conv = converge_truncation(p, 10, 1e-8, 1.5);
    ncuts += (ncuts.empty() ? "" : "/") + std::to_string(conv.n_cut);
    auto flow = track_lines(sweep(p, grid, 10, FockTruncation(conv.n_cut)));
    const auto scan = find_crossings(flow);
    counts[which] = scan.true_crossings();
    if (eps_values[which] == 0.0)
      for (const auto& c : scan.crossings)
        if (c.kind == CrossingKind::TrueCrossing)
          parity_ok = parity_ok && c.parity_a != Parity::None && c.parity_b != Parity::None && c.parity_a != c.parity_b;
    collect(flow);
    g_epsilon_flows.push_back(std::move(flow));
  }
  const double elapsed = seconds_since(t0);
  o.require(counts[0] >= 1, "eps = 0 has a TRUE_CROSSING");
  o.require(counts[2] >= 1, "eps = 0.5 has a TRUE_CROSSING");
  o.require(counts[1] == 0, "eps = 0.3 has no TRUE_CROSSING");
  o.require(parity_ok, "eps = 0 crossings pair opposite parities");
  o.require(elapsed <= 120.0, "runtime <= 2 min");
  o.note("TRUE_CROSSING counts eps=0/0.3/0.5: " + std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + "/" +
         std::to_string(counts[2]) + ", n_cut " + ncuts + ", " + num(elapsed) + " s");
  return o;
}

// 8. Uncertainty distribution at g = 1.2 (and 1.4).
Outcome uncertainty_distribution() {
  Outcome o;
  auto records_at = [](double eps, double g) {
    const ModelParams p = model(ModelKind::AsymmetricRabi, eps);
    const auto conv = converge_truncation(p, 50, 1e-8, g);
    const std::vector<double> grid{g};
    const auto flow = sweep(p, grid, 50, FockTruncation(conv.n_cut));
    collect(flow);
    return uncertainty_records(flow);
  };
  const auto even12 = records_at(0.0, 1.2);
  const auto broken12 = records_at(0.3, 1.2);
  const auto even14 = records_at(0.0, 1.4);

  const auto h_even12 = histogram(even12, 25);
  const auto h_even14 = histogram(even14, 25);
  const auto s_even = delta_statistics(even12);
  const auto s_broken = delta_statistics(broken12);

  o.require(h_even12.modal_bin() == 24, "eps = 0 modal bin is the top bin at g = 1.2");
  o.require(s_even.variance < s_broken.variance, "var(eps = 0) < var(eps = 0.3)");
  o.require(s_broken.min < 0.45, "eps = 0.3 has a state with delta < 0.45");
  o.require(h_even14.modal_bin() == h_even12.modal_bin(), "g = 1.4 keeps the eps = 0 modal bin");
  o.note("var eps=0 " + num(s_even.variance) + " vs eps=0.3 " + num(s_broken.variance) + ", min delta eps=0.3 " +
         num(s_broken.min) + ", top-bin prob eps=0 " + num(h_even12.probabilities.back()) + " vs eps=0.3 " +
         num(histogram(broken12, 25).probabilities.back()));
  return o;
}

// 7. Uncertainty invariants over every state computed above plus a coarse
// sweep of all models.
Outcome uncertainty_invariants() {
  Outcome o;
  const auto grid = uniform_grid(0.0, 1.5, 16);
  for (const auto& p : {model(ModelKind::Rabi), model(ModelKind::JaynesCummings), model(ModelKind::AsymmetricRabi, 0.3),
                        model(ModelKind::AsymmetricRabi, 0.5)}) {
    const auto conv = converge_truncation(p, 50, 1e-8, 1.5);
    collect(sweep(p, grid, 50, FockTruncation(conv.n_cut)));
  }
  double worst_ceiling = 0.0, worst_robertson = 0.0, worst_identity = 0.0, min_delta = INFINITY;
  for (const auto& r : g_all_records) {
    min_delta = std::min(min_delta, r.delta);
    worst_ceiling = std::max(worst_ceiling, r.delta - 0.5);
    worst_robertson = std::max(worst_robertson, std::abs(r.sz) / 2 - r.delta);
    worst_identity = std::max(worst_identity, std::abs(r.delta - 0.5 * std::sqrt(1.0 - r.sx * r.sx)));
  }
  o.require(min_delta >= 0.0, "delta >= 0");
  o.require(worst_ceiling <= 1e-12, "delta <= 1/2 + 1e-12");
  o.require(worst_robertson <= 1e-12, "delta >= |<sz>|/2 - 1e-12");
  o.require(worst_identity <= 1e-12, "delta = sqrt(1 - sx^2)/2 to 1e-12");
  o.note(std::to_string(g_all_records.size()) + " eigenstates; max ceiling excess " + num(worst_ceiling) +
         ", max Robertson violation " + num(worst_robertson) + ", max identity error " + num(worst_identity));
  return o;
}

// 9. Finite-difference slopes of tracked lines versus <dH/dg>.
//
// "Away from crossings" means: not the top line of the window (its partner
// above is untracked) and at least 0.2 in g from every local minimum of an
// adjacent gap touching the line, grid endpoints included. Near g = 0 with
// eps != 0 the gap minimum sits on the boundary, which the crossing scan
// does not report.
constexpr double kCrossingBuffer = 0.2;

struct SlopeSample {
  const SpectralFlow* flow;
  std::size_t k;
  std::size_t line;
};

std::vector<SlopeSample> eligible_samples(const SpectralFlow& flow) {
  const std::size_t steps = flow.points.size();
  const std::size_t m = flow.levels;
  std::vector<std::vector<double>> minima(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    auto gap = [&](std::size_t k) { return flow.points[k].energies[i + 1] - flow.points[k].energies[i]; };
    for (std::size_t k = 0; k < steps; ++k)
      if ((k == 0 || gap(k) < gap(k - 1)) && (k + 1 == steps || gap(k) <= gap(k + 1))) minima[i].push_back(flow.points[k].g);
  }
  std::vector<SlopeSample> out;
  for (std::size_t k = 1; k + 1 < steps; ++k) {
    for (std::size_t line = 0; line < m; ++line) {
      const std::size_t i = flow.sorted_index(k, line);
      if (i + 1 >= m) continue;
      double dist = INFINITY;
      for (std::size_t pair = i == 0 ? 0 : i - 1; pair <= i; ++pair)
        for (double gm : minima[pair]) dist = std::min(dist, std::abs(gm - flow.points[k].g));
      if (dist >= kCrossingBuffer) out.push_back({&flow, k, line});
    }
  }
  return out;
}

Outcome hellmann_feynman() {
  Outcome o;
  if (g_epsilon_flows.size() != 3) {
    o.require(false, "flows from the level-crossing criterion are available");
    return o;
  }
  // five samples each from the parity-symmetric and the broken flow, spread evenly
  std::vector<SlopeSample> picked;
  for (const SpectralFlow* flow : {&g_epsilon_flows[0], &g_epsilon_flows[1]}) {
    const auto pool = eligible_samples(*flow);
    for (std::size_t s = 0; s < 5 && !pool.empty(); ++s) picked.push_back(pool[(2 * s + 1) * pool.size() / 10]);
  }
  double worst = 0.0;
  for (const auto& s : picked) {
    const auto& pts = s.flow->points;
    const double fd = (s.flow->line_energy(s.k + 1, s.line) - s.flow->line_energy(s.k - 1, s.line)) /
                      (pts[s.k + 1].g - pts[s.k - 1].g);
    const double hf = pts[s.k].slopes[s.flow->sorted_index(s.k, s.line)];
    worst = std::max(worst, std::abs(fd - hf));
  }
  o.require(picked.size() == 10, "10 sample points away from crossings");
  o.require(worst <= 1e-3, "slopes agree within 1e-3");
  o.note(std::to_string(picked.size()) + " samples, max |dE/dg - <dH/dg>| = " + num(worst));
  return o;
}

// 10. Byte-identical outputs for different worker counts.
Outcome determinism() {
  Outcome o;
  const RunConfig cfg = parse_run_config(R"({"model": "asym_rabi", "epsilon": 0.3, "levels": 10})");
  for (Command cmd : {Command::Spectrum, Command::Crossings, Command::Uncertainty, Command::Histogram, Command::Converge}) {
    CommandOptions serial, threaded;
    serial.workers = 1;
    serial.svg = threaded.svg = true;
    threaded.workers = 4;
    const auto a = run_command(cmd, cfg, serial);
    const auto b = run_command(cmd, cfg, threaded);
    const auto c = run_command(cmd, cfg, threaded);
    o.require(a.files == b.files && b.files == c.files && a.stdout_text == b.stdout_text,
              std::string(to_string(cmd)) + " output identical");
  }
  o.note("spectrum, crossings, uncertainty, histogram, converge with 1 and 4 workers");
  return o;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // 7 runs after 6 and 8 so it sees their eigenstates; 9 reuses the flows of 6.
  const std::vector<Criterion> criteria{
      {1, "eigensolver contract", eigensolver_contract},
      {2, "JC analytic spectrum", jc_analytic},
      {3, "g = 0 closed form", uncoupled_closed_form},
      {4, "conserved quantities", conserved_quantities},
      {5, "crossing detector", crossing_detector},
      {6, "level crossings vs epsilon", crossings_vs_epsilon},
      {8, "uncertainty distribution at g = 1.2", uncertainty_distribution},
      {7, "uncertainty invariants", uncertainty_invariants},
      {9, "Hellmann-Feynman slopes", hellmann_feynman},
      {10, "determinism", determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] criterion %2d: %s (%.1f s) -- %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds_since(t0),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
