#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptmag/model.hpp"
#include "ptmag/spectrum.hpp"

namespace ptmag {

struct CoolingReport {
  /// Quantum cooling limit; empty when the magnomechanical rates heat (A- <= A+).
  std::optional<double> n_c;
  double n_f = 0.0;
  double n_f_classical = 0.0; // gamma_b n_th / (Gamma + gamma_b)
  double n_f_quantum = 0.0;   // A+ / (Gamma + gamma_b)
  bool ground_state = false;  // n_f < 1
};

/// n_c = A+ / (A- - A+). Requires A- > A+ >= 0.
double quantum_limit(double a_plus, double a_minus);

/// Steady occupancy (gamma_b n_th + Gamma n_c) / (gamma_b + Gamma).
/// Requires Gamma + gamma_b > 0.
CoolingReport final_phonon_number(const CoolingRates &rates, double gamma_b, double n_th);

struct RateEquationOptions {
  /// Highest Fock state kept; chosen from the geometric tail when empty.
  std::optional<long long> n_trunc;
  double tail_tolerance = 1e-10;
  long long max_trunc = 10'000'000;
};

/// Mean phonon number of the stationary Fock-state distribution of the
/// birth-death rate equation, summed state by state up to the truncation.
double rate_equation_steady_state(double a_plus, double a_minus, double gamma_b, double n_th,
                                  const RateEquationOptions &opts = {});

// Sweeps. Each row carries n_f or the reason it is undefined at that point.

struct OccupancyRow {
  double axis = 0.0;
  std::optional<CoolingReport> report;
  std::string error;
};

std::vector<OccupancyRow> occupancy_vs_thermal(const SystemParams &p,
                                               std::span<const double> n_th_grid,
                                               const RateOptions &opts = {});

/// Drive moved to omega_a + detuning for each grid value (rad/s).
std::vector<OccupancyRow> occupancy_vs_detuning(const SystemParams &p, double n_th,
                                                std::span<const double> detunings,
                                                const RateOptions &opts = {});

/// Bias-field sweep: omega_m = gamma H with the drive and cavity held fixed.
/// Grid values in tesla, each within [0, 1].
std::vector<OccupancyRow> field_sweep(const SphereSpec &sphere, const SystemParams &base,
                                      std::span<const double> h_grid, double n_th,
                                      const RateOptions &opts = {});

} // namespace ptmag
