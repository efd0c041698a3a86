#pragma once

// Three-mode cavity magnomechanical model: parameters, unit conversions and
// the steady state of the linearization.
//
// Every rate and frequency is an angular quantity in rad/s. The cavity rate
// kappa_a is a GAIN rate: positive values describe an amplifying cavity,
// negative values encode an ordinary lossy cavity of linewidth |kappa_a|.

#include <complex>
#include <optional>

#include "ptmag/constants.hpp"

namespace ptmag {

using cplx = std::complex<double>;

struct SystemParams {
  double omega_a = 0.0;  // cavity frequency
  double omega_m = 0.0;  // magnon (Kittel) frequency
  double omega_b = 0.0;  // phonon frequency
  double kappa_a = 0.0;  // cavity gain rate (negative: loss)
  double kappa_m = 0.0;  // magnon decay rate
  double gamma_b = 0.0;  // phonon decay rate
  double j_coupling = 0.0;
  double g_single = 0.0;
  double omega_drive = 0.0;
  double rabi = 0.0;
  /// |G| used directly when set; takes precedence over (g_single, rabi).
  std::optional<double> g_linearized_override;
  /// Use kappa/2 instead of kappa in the steady-state amplitude.
  bool steady_state_halfwidth = false;

  double delta_a() const noexcept { return omega_drive - omega_a; }
  double delta_m() const noexcept { return omega_drive - omega_m; }
};

/// Throws DomainError when an invariant of SystemParams is violated.
void validate(const SystemParams &p);

struct SphereSpec {
  double radius = 125e-6;                          // m
  double spin_density = constants::yig_spin_density; // 1/m^3
  double gyro_ratio = constants::gyro_ratio_yig;   // rad/(s T)
  double bias_field = 0.0;                         // T
  double drive_field_amplitude = 0.0;              // T

  double total_spins() const noexcept;
};

void validate(const SphereSpec &s);

struct SteadyState {
  cplx zeta;  // magnon mean field
  cplx beta;  // phonon mean field
  cplx g_eff; // G = g * zeta (or the override)
  /// g (beta + beta*) / Delta_m: the dropped detuning shift relative to Delta_m.
  double linearization_ratio = 0.0;
  /// |linearization_ratio| > 0.1
  bool linearization_warning = false;
  /// g (beta + beta*), the shift Delta_m' - Delta_m neglected downstream (sign flipped).
  double detuning_shift = 0.0;
};

/// Bose occupancy of a mode at frequency omega (rad/s) and temperature (K).
double thermal_occupancy(double omega, double temperature);

/// Magnon drive Rabi frequency sqrt(5)/4 * gamma * sqrt(M) * B0.
double rabi_from_drive(const SphereSpec &sphere);

/// Linear Kittel relation omega_m = gamma * H for H in [0, 1] T.
double magnon_frequency_from_field(const SphereSpec &sphere);

SteadyState steady_state_amplitudes(const SystemParams &p);

enum class CouplingPhase {
  RotateReal, // G -> |G|; the phase is absorbed into the phonon fluctuation
  Keep,
};

/// Copy of `p` with the drive placed at omega_a + delta_a (Delta_a = delta_a).
SystemParams with_drive_detuning(SystemParams p, double delta_a) noexcept;

/// Linearized magnomechanical coupling G used by spectra and dynamics.
cplx linearized_coupling(const SystemParams &p,
                         CouplingPhase phase = CouplingPhase::RotateReal);

} // namespace ptmag
