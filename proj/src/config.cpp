#include "ptmag/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "ptmag/constants.hpp"
#include "ptmag/errors.hpp"

namespace ptmag {

namespace {

enum class Kind {
  Absolute,      // SI value as written
  TimesTwoPi,    // frequency in Hz -> rad/s
  OverOmegaB,    // multiple of omega_b
  OverKappaM,    // multiple of kappa_m
  DetuningOmegaB, // omega_drive = omega_a + value * omega_b
  MilliTesla,
  Flag,
  Text,
};

struct KeySpec {
  std::string_view key;
  std::string_view quantity;
  Kind kind;
};

constexpr KeySpec kKeys[] = {
    {"omega_a", "omega_a", Kind::Absolute},
    {"omega_a_over_2pi", "omega_a", Kind::TimesTwoPi},
    {"omega_m", "omega_m", Kind::Absolute},
    {"omega_m_over_2pi", "omega_m", Kind::TimesTwoPi},
    {"omega_b", "omega_b", Kind::Absolute},
    {"omega_b_over_2pi", "omega_b", Kind::TimesTwoPi},
    {"kappa_m", "kappa_m", Kind::Absolute},
    {"kappa_m_over_omega_b", "kappa_m", Kind::OverOmegaB},
    {"kappa_a", "kappa_a", Kind::Absolute},
    {"kappa_a_over_omega_b", "kappa_a", Kind::OverOmegaB},
    {"kappa_a_over_kappa_m", "kappa_a", Kind::OverKappaM},
    {"gamma_b", "gamma_b", Kind::Absolute},
    {"gamma_b_over_omega_b", "gamma_b", Kind::OverOmegaB},
    {"j_coupling", "j_coupling", Kind::Absolute},
    {"J_over_omega_b", "j_coupling", Kind::OverOmegaB},
    {"J_over_kappa_m", "j_coupling", Kind::OverKappaM},
    {"g_single", "g_single", Kind::Absolute},
    {"g_single_over_2pi", "g_single", Kind::TimesTwoPi},
    {"g_linearized", "g_linearized", Kind::Absolute},
    {"G_over_omega_b", "g_linearized", Kind::OverOmegaB},
    {"G_over_kappa_m", "g_linearized", Kind::OverKappaM},
    {"omega_drive", "omega_drive", Kind::Absolute},
    {"omega_drive_over_2pi", "omega_drive", Kind::TimesTwoPi},
    {"detuning_over_omega_b", "omega_drive", Kind::DetuningOmegaB},
    {"rabi", "rabi", Kind::Absolute},
    {"n_th", "n_th", Kind::Absolute},
    {"temperature", "n_th", Kind::Absolute},
    {"sphere_radius", "sphere_radius", Kind::Absolute},
    {"spin_density", "spin_density", Kind::Absolute},
    {"gyro_ratio", "gyro_ratio", Kind::Absolute},
    {"gyro_ratio_over_2pi", "gyro_ratio", Kind::TimesTwoPi},
    {"bias_field", "bias_field", Kind::Absolute},
    {"bias_field_mT", "bias_field", Kind::MilliTesla},
    {"drive_field_amplitude", "drive_field_amplitude", Kind::Absolute},
    {"steady_state_halfwidth", "steady_state_halfwidth", Kind::Flag},
    {"weak_coupling_tolerance", "weak_coupling_tolerance", Kind::Absolute},
    {"initial_hot_modes", "initial_hot_modes", Kind::Text},
};

const KeySpec *find_key(std::string_view key) {
  for (const KeySpec &k : kKeys) {
    if (k.key == key) {
      return &k;
    }
  }
  return nullptr;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

ConfigEntry split_assignment(std::string_view text, const std::string &source, int line) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw ParseError(source, line, "expected KEY = VALUE, got '" + std::string(text) + "'");
  }
  ConfigEntry e{trim(text.substr(0, eq)), trim(text.substr(eq + 1)), source, line};
  if (e.key.empty() || e.value.empty()) {
    throw ParseError(source, line, "empty key or value in '" + std::string(text) + "'");
  }
  if (!find_key(e.key)) {
    throw ParseError(source, line, "unknown key '" + e.key + "'");
  }
  return e;
}

double parse_number(const ConfigEntry &e) {
  double v = 0.0;
  const char *first = e.value.data();
  const char *last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(e.source, e.line, "'" + e.key + "' expects a number, got '" + e.value + "'");
  }
  return v;
}

bool parse_flag(const ConfigEntry &e) {
  const std::string &v = e.value;
  if (v == "true" || v == "on" || v == "1" || v == "yes") {
    return true;
  }
  if (v == "false" || v == "off" || v == "0" || v == "no") {
    return false;
  }
  throw ParseError(e.source, e.line, "'" + e.key + "' expects true/false, got '" + v + "'");
}

class Resolver {
public:
  explicit Resolver(const RawConfig &raw) {
    for (const ConfigEntry &e : raw.entries()) {
      by_quantity_[std::string(find_key(e.key)->quantity)] = &e;
    }
  }

  const ConfigEntry *entry(std::string_view quantity) const {
    const auto it = by_quantity_.find(std::string(quantity));
    return it == by_quantity_.end() ? nullptr : it->second;
  }

  std::optional<double> number(std::string_view quantity) const {
    const ConfigEntry *e = entry(quantity);
    if (!e) {
      return std::nullopt;
    }
    const KeySpec &spec = *find_key(e->key);
    const double v = parse_number(*e);
    switch (spec.kind) {
    case Kind::Absolute:
      return v;
    case Kind::TimesTwoPi:
      return constants::two_pi * v;
    case Kind::MilliTesla:
      return 1e-3 * v;
    case Kind::OverOmegaB:
      return v * dependency(*e, "omega_b");
    case Kind::OverKappaM:
      return v * dependency(*e, "kappa_m");
    case Kind::DetuningOmegaB:
      return dependency(*e, "omega_a") + v * dependency(*e, "omega_b");
    case Kind::Flag:
    case Kind::Text:
      break;
    }
    throw ParseError(e->source, e->line, "'" + e->key + "' is not numeric");
  }

  double required(std::string_view quantity, std::string_view hint) const {
    const auto v = number(quantity);
    if (!v) {
      throw ParseError("config", 0,
                       "missing required quantity " + std::string(quantity) + " (set " +
                           std::string(hint) + ")");
    }
    return *v;
  }

private:
  double dependency(const ConfigEntry &e, std::string_view quantity) const {
    const auto v = number(quantity);
    if (!v) {
      throw ParseError(e.source, e.line,
                       "'" + e.key + "' needs " + std::string(quantity) + " to be set");
    }
    return *v;
  }

  std::map<std::string, const ConfigEntry *> by_quantity_;
};

} // namespace

void RawConfig::add(ConfigEntry entry, bool replace) {
  const std::string_view quantity = find_key(entry.key)->quantity;
  auto same = [&](const ConfigEntry &e) { return find_key(e.key)->quantity == quantity; };
  if (replace) {
    std::erase_if(entries_, same);
  } else if (const auto it = std::find_if(entries_.begin(), entries_.end(), same);
             it != entries_.end()) {
    throw ParseError(entry.source, entry.line,
                     "'" + entry.key + "' sets " + std::string(quantity) +
                         ", already set by '" + it->key + "' on line " +
                         std::to_string(it->line));
  }
  entries_.push_back(std::move(entry));
}

RawConfig RawConfig::parse(std::istream &in, const std::string &source) {
  RawConfig cfg;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string text = trim(std::string_view(line).substr(0, hash));
    if (text.empty()) {
      continue;
    }
    cfg.add(split_assignment(text, source, number), false);
  }
  return cfg;
}

RawConfig RawConfig::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open configuration file");
  }
  return parse(in, path);
}

void RawConfig::apply_override(const std::string &assignment) {
  add(split_assignment(assignment, "--set", 0), true);
}

ResolvedConfig resolve(const RawConfig &raw) {
  const Resolver r(raw);
  ResolvedConfig out;

  SphereSpec &s = out.sphere;
  s.radius = r.number("sphere_radius").value_or(s.radius);
  s.spin_density = r.number("spin_density").value_or(s.spin_density);
  s.gyro_ratio = r.number("gyro_ratio").value_or(s.gyro_ratio);
  s.bias_field = r.number("bias_field").value_or(s.bias_field);
  s.drive_field_amplitude = r.number("drive_field_amplitude").value_or(0.0);
  validate(s);

  SystemParams &p = out.params;
  p.omega_b = r.required("omega_b", "omega_b or omega_b_over_2pi");
  p.omega_a = r.required("omega_a", "omega_a or omega_a_over_2pi");
  if (const auto wm = r.number("omega_m")) {
    p.omega_m = *wm;
  } else if (r.entry("bias_field")) {
    p.omega_m = magnon_frequency_from_field(s);
  } else {
    throw ParseError("config", 0, "missing required quantity omega_m (set omega_m, "
                                  "omega_m_over_2pi or bias_field)");
  }
  p.kappa_m = r.required("kappa_m", "kappa_m or kappa_m_over_omega_b");
  p.kappa_a = r.required("kappa_a", "kappa_a, kappa_a_over_omega_b or kappa_a_over_kappa_m");
  p.gamma_b = r.required("gamma_b", "gamma_b or gamma_b_over_omega_b");
  p.j_coupling = r.required("j_coupling", "j_coupling, J_over_omega_b or J_over_kappa_m");
  p.omega_drive =
      r.required("omega_drive", "omega_drive, omega_drive_over_2pi or detuning_over_omega_b");
  p.g_single = r.number("g_single").value_or(0.0);
  if (const auto rabi = r.number("rabi")) {
    p.rabi = *rabi;
  } else if (s.drive_field_amplitude > 0.0) {
    p.rabi = rabi_from_drive(s);
  }
  p.g_linearized_override = r.number("g_linearized");
  if (const ConfigEntry *e = r.entry("steady_state_halfwidth")) {
    p.steady_state_halfwidth = parse_flag(*e);
  }
  validate(p);

  if (const ConfigEntry *e = r.entry("n_th")) {
    const double v = parse_number(*e);
    out.n_th = e->key == "temperature" ? thermal_occupancy(p.omega_b, v) : v;
    if (!(*out.n_th >= 0.0)) {
      throw DomainError("n_th must be >= 0");
    }
  }
  out.weak_coupling_tolerance =
      r.number("weak_coupling_tolerance").value_or(out.weak_coupling_tolerance);
  if (const ConfigEntry *e = r.entry("initial_hot_modes")) {
    if (e->value == "phonon_and_magnon") {
      out.initial_hot_modes = InitialHotModes::PhononAndMagnon;
    } else if (e->value == "phonon") {
      out.initial_hot_modes = InitialHotModes::PhononOnly;
    } else {
      throw ParseError(e->source, e->line,
                       "initial_hot_modes must be phonon_and_magnon or phonon");
    }
  }
  return out;
}

const std::vector<std::string> &known_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const KeySpec &spec : kKeys) {
      k.emplace_back(spec.key);
    }
    return k;
  }();
  return keys;
}

} // namespace ptmag
