#pragma once

// Flat key = value parameter files.
//
//   # comment
//   omega_b_over_2pi     = 10e6
//   kappa_m_over_omega_b = 0.2
//   G_over_kappa_m       = 0.15
//
// Values are SI (angular frequencies in rad/s, fields in T, temperatures in
// K). Ratio keys are expanded against the quantities they reference once the
// whole file is read, so order inside the file does not matter. Each physical
// quantity may be set once per file; --set overrides replace whatever key set
// that quantity before. Unknown keys are rejected.

#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptmag/dynamics.hpp"
#include "ptmag/model.hpp"

namespace ptmag {

struct ConfigEntry {
  std::string key;
  std::string value;
  std::string source;
  int line = 0;
};

class RawConfig {
public:
  static RawConfig parse(std::istream &in, const std::string &source);
  static RawConfig load(const std::string &path);

  /// Apply "KEY=VALUE"; replaces every earlier entry for the same quantity.
  void apply_override(const std::string &assignment);

  const std::vector<ConfigEntry> &entries() const noexcept { return entries_; }

private:
  void add(ConfigEntry entry, bool replace);
  std::vector<ConfigEntry> entries_;
};

struct ResolvedConfig {
  SystemParams params;
  SphereSpec sphere;
  std::optional<double> n_th;
  double weak_coupling_tolerance = 0.05;
  InitialHotModes initial_hot_modes = InitialHotModes::PhononAndMagnon;
};

/// Expand ratio keys and build validated parameters. Throws ParseError for
/// malformed values or missing quantities and DomainError for values that
/// parse but violate a physical invariant.
ResolvedConfig resolve(const RawConfig &raw);

/// Every recognised key, for diagnostics and documentation.
const std::vector<std::string> &known_config_keys();

} // namespace ptmag
