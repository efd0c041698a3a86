#include "ptmag/cli.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ptmag/cooling.hpp"
#include "ptmag/csv.hpp"
#include "ptmag/dynamics.hpp"
#include "ptmag/errors.hpp"
#include "ptmag/grid.hpp"
#include "ptmag/spectrum.hpp"
#include "ptmag/supermodes.hpp"

#ifndef PTMAG_VERSION
#define PTMAG_VERSION "unknown"
#endif

namespace ptmag::cli {

namespace {

struct CommandInfo {
  Command command;
  const char *name;
};

constexpr CommandInfo kCommands[] = {
    {Command::EigenSweep, "eigen_sweep"},
    {Command::Spectrum, "spectrum"},
    {Command::CoolingRate, "cooling_rate"},
    {Command::PhononVsNth, "phonon_vs_nth"},
    {Command::PhononVsDetuning, "phonon_vs_detuning"},
    {Command::FieldSweep, "field_sweep"},
    {Command::Evolve, "evolve"},
    {Command::Check, "check"},
};

double parse_double(const std::string &s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

} // namespace

std::optional<Command> parse_command(const std::string &name) {
  for (const CommandInfo &c : kCommands) {
    if (name == c.name) {
      return c.command;
    }
  }
  return std::nullopt;
}

const char *command_name(Command c) noexcept {
  for (const CommandInfo &info : kCommands) {
    if (info.command == c) {
      return info.name;
    }
  }
  return "unknown";
}

GridSpec parse_grid(const std::string &text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream is(text);
  while (std::getline(is, part, ':')) {
    parts.push_back(part);
  }
  if (parts.size() != 4 || parts[0].empty()) {
    throw std::invalid_argument("grid must be AXIS:START:STOP:N, got '" + text + "'");
  }
  GridSpec g;
  g.axis = parts[0];
  g.start = parse_double(parts[1]);
  g.stop = parse_double(parts[2]);
  int n = 0;
  const auto [ptr, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), n);
  if (ec != std::errc{} || ptr != parts[3].data() + parts[3].size() || n < 1) {
    throw std::invalid_argument("grid point count must be an integer >= 1, got '" + parts[3] +
                                "'");
  }
  g.points = n;
  return g;
}

std::vector<std::string> grid_axes(Command c) {
  switch (c) {
  case Command::EigenSweep:
    return {"J_over_kappa_m", "kappa_a_over_kappa_m"};
  case Command::Spectrum:
    return {"omega_over_omega_b"};
  case Command::CoolingRate:
  case Command::PhononVsDetuning:
    return {"detuning_over_omega_b"};
  case Command::PhononVsNth:
    return {"n_th"};
  case Command::FieldSweep:
    return {"H_mT"};
  case Command::Evolve:
    return {"omega_b_t"};
  case Command::Check:
    return {};
  }
  return {};
}

GridSpec default_grid(Command c) {
  switch (c) {
  case Command::EigenSweep:
    return {"J_over_kappa_m", 0.0, 1.0, 1001};
  case Command::Spectrum:
    return {"omega_over_omega_b", 0.5, 1.5, 4001};
  case Command::CoolingRate:
  case Command::PhononVsDetuning:
    return {"detuning_over_omega_b", -2.0, 0.0, 2001};
  case Command::PhononVsNth:
    return {"n_th", 0.0, 1e6, 1001};
  case Command::FieldSweep:
    return {"H_mT", 340.0, 380.0, 4001};
  case Command::Evolve:
    return {"omega_b_t", 0.0, 5000.0, 501};
  case Command::Check:
    return {};
  }
  return {};
}

namespace {

void write_header(std::ostream &os, const RunConfig &rc, const ResolvedConfig &cfg,
                  const GridSpec *grid) {
  const SystemParams &p = cfg.params;
  csv::comment(os, std::string("ptmag ") + PTMAG_VERSION);
  csv::comment(os, std::string("command: ") + command_name(rc.command));
  csv::comment(os, "config: " + rc.params_file);
  for (const std::string &o : rc.overrides) {
    csv::comment(os, "override: " + o);
  }
  auto param = [&](const std::string &key, double v) { csv::comment(os, key + " = " + csv::number(v)); };
  param("omega_a", p.omega_a);
  param("omega_m", p.omega_m);
  param("omega_b", p.omega_b);
  param("kappa_a", p.kappa_a);
  param("kappa_m", p.kappa_m);
  param("gamma_b", p.gamma_b);
  param("j_coupling", p.j_coupling);
  param("g_single", p.g_single);
  param("omega_drive", p.omega_drive);
  param("rabi", p.rabi);
  if (p.g_linearized_override) {
    param("g_linearized", *p.g_linearized_override);
  }
  csv::comment(os, std::string("steady_state_halfwidth = ") +
                       (p.steady_state_halfwidth ? "true" : "false"));
  if (cfg.n_th) {
    param("n_th", *cfg.n_th);
  }
  param("weak_coupling_tolerance", cfg.weak_coupling_tolerance);
  if (grid) {
    csv::comment(os, "grid: " + grid->axis + ":" + csv::number(grid->start) + ":" +
                         csv::number(grid->stop) + ":" + std::to_string(grid->points));
  }
}

double require_n_th(const ResolvedConfig &cfg) {
  if (!cfg.n_th) {
    throw ParseError("config", 0, "this command needs n_th or temperature");
  }
  return *cfg.n_th;
}

const char *status_name(CheckStatus s) {
  switch (s) {
  case CheckStatus::Pass:
    return "PASS";
  case CheckStatus::Warn:
    return "WARN";
  case CheckStatus::Fail:
    return "FAIL";
  case CheckStatus::Skip:
    return "SKIP";
  }
  return "?";
}

// Writes the command's data. Throws on failure; `os` may hold partial output.
int execute(const RunConfig &rc, const ResolvedConfig &cfg, const GridSpec *grid,
            std::ostream &os, std::ostream &err) {
  const SystemParams &p = cfg.params;
  const RateOptions rate_opts{cfg.weak_coupling_tolerance};
  std::vector<double> values;
  if (grid) {
    values = linspace(grid->start, grid->stop, static_cast<std::size_t>(grid->points));
  }
  auto scaled = [&](double unit) {
    std::vector<double> v = values;
    for (double &x : v) {
      x *= unit;
    }
    return v;
  };

  switch (rc.command) {
  case Command::EigenSweep: {
    const bool coupling = grid->axis == "J_over_kappa_m";
    const auto rows = sweep_eigenvalues(coupling ? EigenAxis::CouplingJ : EigenAxis::GainKappaA,
                                        scaled(p.kappa_m), p);
    csv::eigen_sweep(os, rows, p.kappa_m);
    return kSuccess;
  }
  case Command::Spectrum:
    csv::spectrum(os, spectrum_sweep(p, scaled(p.omega_b)), p.omega_b);
    return kSuccess;
  case Command::CoolingRate:
    csv::cooling_rates(os, cooling_rate_sweep(p, scaled(p.omega_b), rate_opts), p.omega_b);
    return kSuccess;
  case Command::PhononVsNth:
    csv::occupancy(os, occupancy_vs_thermal(p, values, rate_opts), "n_th", 1.0);
    return kSuccess;
  case Command::PhononVsDetuning:
    csv::occupancy(os, occupancy_vs_detuning(p, require_n_th(cfg), scaled(p.omega_b), rate_opts),
                   "detuning_over_omega_b", p.omega_b);
    return kSuccess;
  case Command::FieldSweep:
    csv::occupancy(os, field_sweep(cfg.sphere, p, scaled(1e-3), require_n_th(cfg), rate_opts),
                   "H_mT", 1e-3);
    return kSuccess;
  case Command::Evolve: {
    const double n_th = require_n_th(cfg);
    const std::vector<double> times = scaled(1.0 / p.omega_b);
    csv::trajectory_header(os, rc.full_covariance);
    evolve_covariance(p, n_th, initial_covariance(n_th, cfg.initial_hot_modes), times,
                      [&](const CovarianceState &s) { csv::trajectory_row(os, s, rc.full_covariance); });
    return kSuccess;
  }
  case Command::Check: {
    int failures = 0;
    for (const CheckResult &c : run_checks(cfg)) {
      os << status_name(c.status) << ' ' << c.name << ": " << c.detail << '\n';
      failures += c.status == CheckStatus::Fail;
    }
    if (failures > 0) {
      err << failures << " invariant check(s) failed\n";
      return kPhysics;
    }
    return kSuccess;
  }
  }
  return kUsage;
}

} // namespace

int run(const RunConfig &rc, std::ostream &out, std::ostream &err) {
  ResolvedConfig cfg;
  try {
    RawConfig raw = RawConfig::load(rc.params_file);
    for (const std::string &o : rc.overrides) {
      raw.apply_override(o);
    }
    cfg = resolve(raw);
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const PhysicsError &e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kPhysics;
  }

  std::optional<GridSpec> grid;
  if (rc.command != Command::Check) {
    grid = rc.grid.value_or(default_grid(rc.command));
    const auto axes = grid_axes(rc.command);
    if (std::find(axes.begin(), axes.end(), grid->axis) == axes.end()) {
      err << "usage error: axis '" << grid->axis << "' is not valid for "
          << command_name(rc.command) << '\n';
      return kUsage;
    }
    if (grid->points < 1) {
      err << "usage error: grid needs at least one point\n";
      return kUsage;
    }
  } else if (rc.grid) {
    err << "usage error: check takes no grid\n";
    return kUsage;
  }

  std::ostringstream data;
  write_header(data, rc, cfg, grid ? &*grid : nullptr);
  int status = kSuccess;
  try {
    status = execute(rc, cfg, grid ? &*grid : nullptr, data, err);
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << '\n';
    status = kParse;
  } catch (const PhysicsError &e) {
    err << "physics error: " << e.what() << '\n';
    status = kPhysics;
  }
  if (status == kParse) {
    return status;
  }

  if (rc.output.empty()) {
    out << data.str();
  } else {
    std::ofstream file(rc.output, std::ios::binary);
    if (!file) {
      err << "usage error: cannot write " << rc.output << '\n';
      return kUsage;
    }
    file << data.str();
  }
  return status;
}

} // namespace ptmag::cli
