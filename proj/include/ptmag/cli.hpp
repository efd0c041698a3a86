#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ptmag/config.hpp"

namespace ptmag::cli {

enum class Command {
  EigenSweep,
  Spectrum,
  CoolingRate,
  PhononVsNth,
  PhononVsDetuning,
  FieldSweep,
  Evolve,
  Check,
};

std::optional<Command> parse_command(const std::string &name);
const char *command_name(Command c) noexcept;

enum ExitCode : int { kSuccess = 0, kUsage = 1, kParse = 2, kPhysics = 3 };

struct GridSpec {
  std::string axis;
  double start = 0.0;
  double stop = 0.0;
  int points = 1;
};

/// Parses AXIS:START:STOP:N. Throws std::invalid_argument on malformed input.
GridSpec parse_grid(const std::string &text);

struct RunConfig {
  Command command = Command::Check;
  std::string params_file;
  std::vector<std::string> overrides; // KEY=VALUE, applied after the file
  std::string output;                 // empty: write to `out`
  std::optional<GridSpec> grid;
  bool full_covariance = false;       // evolve only
};

/// Axes accepted by --grid for a command, first one is the default.
std::vector<std::string> grid_axes(Command c);
GridSpec default_grid(Command c);

/// Runs one command end to end. Data goes to config.output (or `out`),
/// diagnostics to `err`. Returns an ExitCode.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

// Invariant self-test behind the `check` command.

enum class CheckStatus { Pass, Warn, Fail, Skip };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

std::vector<CheckResult> run_checks(const ResolvedConfig &cfg);

} // namespace ptmag::cli
