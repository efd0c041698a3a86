#include "ptmag/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ptmag/errors.hpp"

namespace ptmag {

namespace {

void require(bool ok, const std::string &msg) {
  if (!ok) {
    throw DomainError(msg);
  }
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }
bool finite_non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

} // namespace

void validate(const SystemParams &p) {
  require(finite_positive(p.omega_a), "omega_a must be > 0");
  require(finite_positive(p.omega_m), "omega_m must be > 0");
  require(finite_positive(p.omega_b), "omega_b must be > 0");
  require(finite_positive(p.omega_drive), "omega_drive must be > 0");
  require(std::isfinite(p.kappa_a), "kappa_a must be finite");
  require(finite_positive(p.kappa_m), "kappa_m must be > 0");
  require(finite_positive(p.gamma_b), "gamma_b must be > 0");
  require(finite_non_negative(p.j_coupling), "J must be >= 0");
  require(finite_non_negative(p.g_single), "g must be >= 0");
  require(finite_non_negative(p.rabi), "rabi frequency must be >= 0");
  if (p.g_linearized_override) {
    require(finite_non_negative(*p.g_linearized_override), "|G| override must be >= 0");
  }
}

double SphereSpec::total_spins() const noexcept {
  return spin_density * (4.0 / 3.0) * std::numbers::pi * radius * radius * radius;
}

void validate(const SphereSpec &s) {
  require(finite_positive(s.radius), "sphere radius must be > 0");
  require(finite_positive(s.spin_density), "spin density must be > 0");
  require(finite_positive(s.gyro_ratio), "gyromagnetic ratio must be > 0");
  require(std::isfinite(s.bias_field) && s.bias_field >= 0.0 && s.bias_field <= 1.0,
          "bias field must lie in [0, 1] T");
  require(finite_non_negative(s.drive_field_amplitude), "drive field amplitude must be >= 0");
}

double thermal_occupancy(double omega, double temperature) {
  require(finite_positive(omega), "thermal occupancy needs omega > 0");
  require(std::isfinite(temperature) && temperature >= 0.0, "temperature must be >= 0");
  if (temperature == 0.0) {
    return 0.0;
  }
  const double x = constants::hbar * omega / (constants::k_boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

double rabi_from_drive(const SphereSpec &sphere) {
  validate(sphere);
  return std::sqrt(5.0) / 4.0 * sphere.gyro_ratio * std::sqrt(sphere.total_spins()) *
         sphere.drive_field_amplitude;
}

double magnon_frequency_from_field(const SphereSpec &sphere) {
  require(std::isfinite(sphere.bias_field) && sphere.bias_field >= 0.0 &&
              sphere.bias_field <= 1.0,
          "bias field must lie in [0, 1] T");
  require(finite_positive(sphere.gyro_ratio), "gyromagnetic ratio must be > 0");
  return sphere.gyro_ratio * sphere.bias_field;
}

SteadyState steady_state_amplitudes(const SystemParams &p) {
  validate(p);
  const double scale = p.steady_state_halfwidth ? 0.5 : 1.0;
  const cplx i{0.0, 1.0};
  const cplx cavity = -i * p.delta_a() + scale * p.kappa_a;
  const cplx magnon = -i * p.delta_m() + scale * p.kappa_m;
  const cplx den = p.j_coupling * p.j_coupling + cavity * magnon;
  const double den_scale = p.j_coupling * p.j_coupling + std::abs(cavity) * std::abs(magnon);
  if (std::abs(den) <= 64.0 * std::numeric_limits<double>::epsilon() * den_scale) {
    throw SingularDriveError("steady-state denominator J^2 + (-i Delta_a + kappa_a)"
                             "(-i Delta_m + kappa_m) vanishes");
  }

  SteadyState s;
  s.zeta = p.rabi * cavity / den;
  const double zeta2 = std::norm(s.zeta);
  s.beta = -i * p.g_single * zeta2 / (i * p.omega_b + 0.5 * p.gamma_b);
  s.g_eff = p.g_linearized_override ? cplx{*p.g_linearized_override, 0.0} : p.g_single * s.zeta;
  s.detuning_shift = p.g_single * 2.0 * s.beta.real();
  const double dm = p.delta_m();
  if (dm != 0.0) {
    s.linearization_ratio = s.detuning_shift / dm;
  } else {
    s.linearization_ratio =
        s.detuning_shift == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  s.linearization_warning = std::abs(s.linearization_ratio) > 0.1;
  return s;
}

SystemParams with_drive_detuning(SystemParams p, double delta_a) noexcept {
  p.omega_drive = p.omega_a + delta_a;
  return p;
}

cplx linearized_coupling(const SystemParams &p, CouplingPhase phase) {
  validate(p);
  if (p.g_linearized_override) {
    return {*p.g_linearized_override, 0.0};
  }
  if (p.g_single == 0.0 || p.rabi == 0.0) {
    return {0.0, 0.0};
  }
  const cplx g = steady_state_amplitudes(p).g_eff;
  return phase == CouplingPhase::RotateReal ? cplx{std::abs(g), 0.0} : g;
}

} // namespace ptmag
