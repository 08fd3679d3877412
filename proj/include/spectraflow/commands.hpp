#pragma once

#include "spectraflow/config.hpp"
#include "spectraflow/spectra.hpp"

#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spectraflow {

enum class Command { Spectrum, Crossings, Uncertainty, Histogram, Converge };

std::string_view to_string(Command cmd) noexcept;
Command parse_command(std::string_view name);

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitConvergenceCap = 4;

// Maps ConfigError -> 2, ConvergenceError -> 4, NumericalError -> 3, else 1.
int exit_code_for(const std::exception& error) noexcept;

struct CommandOutput {
  // (file name, contents), written into the output directory.
  std::vector<std::pair<std::string, std::string>> files;
  // Text destined for standard output.
  std::string stdout_text;
};

struct CommandOptions {
  bool svg = false;
  std::size_t workers = 0;  // 0: default_worker_count()
};

// Truncation used by a command: the explicit n_cut, or the convergence
// controller run at the largest |g| the command will touch.
struct TruncationChoice {
  FockTruncation trunc{2};
  std::optional<ConvergenceResult> convergence;
};
TruncationChoice choose_truncation(const RunConfig& cfg, double g_reference);

// Runs one subcommand. Pure with respect to the file system; the caller
// writes the returned files.
CommandOutput run_command(Command cmd, const RunConfig& cfg, const CommandOptions& options = {});

// Entry point shared by the spectraflow binary.
int cli_main(int argc, char** argv);

} // namespace spectraflow
