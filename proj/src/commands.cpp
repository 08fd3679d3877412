#include "spectraflow/commands.hpp"

#include "spectraflow/errors.hpp"
#include "spectraflow/observables.hpp"
#include "spectraflow/outputs.hpp"
#include "spectraflow/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace spectraflow {

std::string_view to_string(Command cmd) noexcept {
  switch (cmd) {
  case Command::Spectrum: return "spectrum";
  case Command::Crossings: return "crossings";
  case Command::Uncertainty: return "uncertainty";
  case Command::Histogram: return "histogram";
  case Command::Converge: return "converge";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::Spectrum, Command::Crossings, Command::Uncertainty, Command::Histogram, Command::Converge})
    if (to_string(c) == name) return c;
  throw ConfigError("unknown subcommand '" + std::string(name) + "'");
}

int exit_code_for(const std::exception& error) noexcept {
  if (dynamic_cast<const ConfigError*>(&error)) return kExitConfig;
  if (dynamic_cast<const ConvergenceError*>(&error)) return kExitConvergenceCap;
  if (dynamic_cast<const NumericalError*>(&error)) return kExitNumerical;
  return kExitIo;
}

TruncationChoice choose_truncation(const RunConfig& cfg, double g_reference) {
  if (cfg.n_cut) return {FockTruncation(*cfg.n_cut), std::nullopt};
  ConvergenceResult conv = converge_truncation(cfg.model_params(), cfg.levels, cfg.converge_tol, g_reference);
  return {FockTruncation(conv.n_cut), std::move(conv)};
}

namespace {

double max_abs_g(const RunConfig& cfg) { return std::max(std::abs(cfg.g_min), std::abs(cfg.g_max)); }

SpectralFlow tracked_flow(const RunConfig& cfg, const CommandOptions& options) {
  const auto grid = uniform_grid(cfg.g_min, cfg.g_max, cfg.g_steps);
  const auto choice = choose_truncation(cfg, max_abs_g(cfg));
  SweepOptions sweep_opts;
  sweep_opts.workers = options.workers;
  return track_lines(sweep(cfg.model_params(), grid, cfg.levels, choice.trunc, sweep_opts));
}

std::string converge_json(const RunConfig& cfg, const ConvergenceResult& conv, double g_reference) {
  nlohmann::ordered_json doc;
  doc["model"] = std::string(to_string(cfg.model));
  doc["levels"] = cfg.levels;
  doc["tol"] = cfg.converge_tol;
  doc["g_max"] = g_reference;
  doc["start_n_cut"] = conv.history.empty() ? conv.n_cut : conv.history.front().n_cut;
  doc["n_cut"] = conv.n_cut;
  auto& steps = doc["history"] = nlohmann::ordered_json::array();
  for (const auto& s : conv.history)
    steps.push_back({{"n_cut", s.n_cut}, {"next_n_cut", s.next_n_cut}, {"max_delta", s.max_delta}});
  doc["energies"] = conv.energies;
  return doc.dump() + "\n";
}

} // namespace

CommandOutput run_command(Command cmd, const RunConfig& cfg, const CommandOptions& options) {
  cfg.validate();
  CommandOutput out;
  switch (cmd) {
  case Command::Spectrum: {
    const SpectralFlow flow = tracked_flow(cfg, options);
    std::string csv = spectrum_csv(flow);
    if (options.svg) out.files.emplace_back("spectrum.svg", spectrum_svg(csv));
    out.files.emplace(out.files.begin(), "spectrum.csv", std::move(csv));
    break;
  }
  case Command::Crossings: {
    const SpectralFlow flow = tracked_flow(cfg, options);
    CrossingOptions xopts;
    xopts.workers = options.workers;
    const CrossingScan scan = find_crossings(flow, xopts);
    for (const auto& f : scan.failures)
      std::cerr << "spectraflow: crossing refinement failed for levels " << f.lower_index << '/' << f.lower_index + 1
                << " in [" << f.g_lo << ", " << f.g_hi << "]: " << f.reason << '\n';
    out.files.emplace_back("crossings.csv", crossings_csv(scan));
    break;
  }
  case Command::Uncertainty: {
    const SpectralFlow flow = tracked_flow(cfg, options);
    const auto records = uncertainty_records(flow);
    std::string csv = uncertainty_csv(records);
    if (options.svg) out.files.emplace_back("uncertainty.svg", uncertainty_svg(csv));
    out.files.emplace(out.files.begin(), "uncertainty.csv", std::move(csv));
    break;
  }
  case Command::Histogram: {
    const auto choice = choose_truncation(cfg, std::abs(cfg.histogram_g));
    SweepOptions sweep_opts;
    sweep_opts.workers = options.workers;
    const double g = cfg.histogram_g;
    const auto records =
        uncertainty_sweep(cfg.model_params(), std::span<const double>(&g, 1), cfg.levels, choice.trunc, sweep_opts);
    std::string csv = histogram_csv(histogram(records, cfg.n_bins));
    if (options.svg) out.files.emplace_back("histogram.svg", histogram_svg(csv));
    out.files.emplace(out.files.begin(), "histogram.csv", std::move(csv));
    break;
  }
  case Command::Converge: {
    const double g_reference = max_abs_g(cfg);
    const auto conv = converge_truncation(cfg.model_params(), cfg.levels, cfg.converge_tol, g_reference);
    out.stdout_text = converge_json(cfg, conv, g_reference);
    break;
  }
  }
  return out;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Spectral flow, level-crossing and uncertainty-product analysis of atom-field models"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  bool svg = false;

  for (Command c : {Command::Spectrum, Command::Crossings, Command::Uncertainty, Command::Histogram, Command::Converge}) {
    static const std::map<Command, std::string> help{
        {Command::Spectrum, "tracked eigenvalue lines E_n(g) -> spectrum.csv"},
        {Command::Crossings, "refined level crossings and avoided crossings -> crossings.csv"},
        {Command::Uncertainty, "uncertainty product of the lowest levels over g -> uncertainty.csv"},
        {Command::Histogram, "distribution of the uncertainty product at histogram_g -> histogram.csv"},
        {Command::Converge, "Fock truncation convergence report (JSON on stdout)"}};
    auto* sub = app.add_subcommand(std::string(to_string(c)), help.at(c));
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output_dir in the config)");
    sub->add_flag("--svg", svg, "also write an SVG plot next to the CSV (spectrum, uncertainty, histogram)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const Command cmd = parse_command(app.get_subcommands().front()->get_name());
    RunConfig cfg = load_run_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;

    CommandOptions options;
    options.svg = svg;
    const CommandOutput result = run_command(cmd, cfg, options);

    if (!result.files.empty()) {
      std::filesystem::create_directories(cfg.output_dir);
      for (const auto& [name, contents] : result.files) {
        const auto path = std::filesystem::path(cfg.output_dir) / name;
        std::ofstream file(path, std::ios::binary);
        file << contents;
        if (!file) throw std::runtime_error("failed to write " + path.string());
        std::cerr << "spectraflow: wrote " << path.string() << '\n';
      }
    }
    std::cout << result.stdout_text;
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "spectraflow: error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

} // namespace spectraflow
