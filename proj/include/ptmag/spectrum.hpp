#pragma once

// Magnetic-force noise spectrum and the rates derived from it.
//
// Spectra are reported in rate units: S~_FF(omega) = S_FF(omega) x_zpf^2, so
// the effective mass of the resonator never enters.

#include <optional>
#include <span>
#include <vector>

#include "ptmag/model.hpp"

namespace ptmag {

struct SusceptibilityTriple {
  cplx chi_a; // 1 / (-i (omega + Delta_a) - kappa_a/2), gain enters with a minus sign
  cplx chi_b; // 1 / (-i (omega - omega_b) + gamma_b/2)
  cplx chi_m; // 1 / (-i (omega + Delta_m) + kappa_m/2)
};

SusceptibilityTriple susceptibilities(const SystemParams &p, double omega);

enum class ResponseVariant {
  WithPhonon, // chi_m / (1 + J^2 chi_a chi_m + |G|^2 chi_b chi_m)
  Bare,       // [J^2 chi_a + chi_m^-1]^-1
};

cplx total_response(const SystemParams &p, double omega,
                    ResponseVariant variant = ResponseVariant::WithPhonon);

struct SpectrumPoint {
  double omega = 0.0;
  double s_ff = 0.0;
  double term_thermal = 0.0; // |G|^2 gamma_b |chi(omega)|^2
  double term_cavity = 0.0;  // |G|^2 kappa_a J^2 |chi(-omega)|^2 |chi_a(-omega)|^2
};

SpectrumPoint force_noise_spectrum(const SystemParams &p, double omega,
                                   ResponseVariant variant = ResponseVariant::WithPhonon);

/// Sigma(omega) = -i |G|^2 [chi(omega) - chi*(-omega)] with the bare response.
cplx self_energy(const SystemParams &p, double omega);

struct CoolingRates {
  double a_plus = 0.0;    // heating, S~_FF(-omega_b)
  double a_minus = 0.0;   // cooling, S~_FF(omega_b)
  double gamma_net = 0.0; // a_minus - a_plus
  /// -2 Im Sigma(omega_b); empty when the bare response has a pole there.
  std::optional<double> gamma_selfenergy;
  /// Re Sigma(omega_b); empty together with gamma_selfenergy.
  std::optional<double> delta_omega_b;
  /// |gamma_net - gamma_selfenergy| / max(|gamma_net|, |gamma_selfenergy|)
  std::optional<double> consistency_gap;
  /// Set when the two Gamma routes disagree beyond tolerance or Sigma is singular.
  bool consistency_warning = false;
  /// Set when S~_FF came out negative at +omega_b or -omega_b (only possible for kappa_a < 0).
  bool negative_spectrum = false;
};

struct RateOptions {
  double weak_coupling_tolerance = 0.05;
};

CoolingRates scattering_rates(const SystemParams &p, const RateOptions &opts = {});

// Sweeps. Points that hit a pole are reported with NaN values.

std::vector<SpectrumPoint> spectrum_sweep(const SystemParams &p, std::span<const double> omegas);

struct CoolingRateRow {
  double detuning = 0.0; // Delta_a = Delta_m shift, rad/s
  CoolingRates rates;
  bool ok = true;
};

/// Rates with the drive moved to omega_a + detuning for each grid value.
std::vector<CoolingRateRow> cooling_rate_sweep(const SystemParams &p,
                                               std::span<const double> detunings,
                                               const RateOptions &opts = {});

// Peak location on a window.

struct Extremum {
  double omega = 0.0;
  double value = 0.0;
};

struct PeakSearch {
  int points = 4001;
  /// Absolute refinement tolerance in rad/s; defaults to 1e-6 omega_b.
  std::optional<double> tolerance;
  ResponseVariant variant = ResponseVariant::WithPhonon;
};

/// Interior local maxima (or minima) of S~_FF over [lo, hi] on a uniform grid,
/// each refined inside its bracketing grid cell.
std::vector<Extremum> spectrum_extrema(const SystemParams &p, double lo, double hi,
                                       bool maxima, const PeakSearch &search = {});

/// Global maximum of S~_FF over [lo, hi] (grid argmax, refined when interior).
Extremum spectrum_global_maximum(const SystemParams &p, double lo, double hi,
                                 const PeakSearch &search = {});

} // namespace ptmag
