#pragma once

#include "spectraflow/hilbert.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace spectraflow {

// Flat JSON run configuration. Unknown keys are rejected so typos fail loudly.
struct RunConfig {
  ModelKind model = ModelKind::Rabi;
  double omega = 1.0;
  std::optional<double> omega0;  // defaults to omega (resonance)
  double epsilon = 0.0;
  double g_min = 0.0;
  double g_max = 1.5;
  std::size_t g_steps = 151;
  std::size_t levels = 50;
  std::optional<std::size_t> n_cut;  // empty: "auto"
  double converge_tol = 1e-8;
  double histogram_g = 1.2;
  std::size_t n_bins = 25;
  std::string output_dir = ".";

  ModelParams model_params() const;
  // Throws ConfigError describing the first violated constraint.
  void validate() const;
};

RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::string& path);

} // namespace spectraflow
