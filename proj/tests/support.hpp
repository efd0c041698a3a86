#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "ptmag/constants.hpp"
#include "ptmag/model.hpp"

namespace testing {

using ptmag::cplx;
using ptmag::SystemParams;

inline constexpr double kWb = ptmag::constants::two_pi * 10e6;
inline constexpr double kW0 = ptmag::constants::two_pi * 10.1e9;

// omega_b = 1 units: kappa_m = 0.2, J = 0.1, gamma_b = 1e-5, Delta = -1.
inline SystemParams canonical(double kappa_a_over_kappa_m, double g_over_omega_b) {
  SystemParams p;
  p.omega_a = p.omega_m = kW0;
  p.omega_b = kWb;
  p.kappa_m = 0.2 * kWb;
  p.kappa_a = kappa_a_over_kappa_m * p.kappa_m;
  p.gamma_b = 1e-5 * kWb;
  p.j_coupling = 0.1 * kWb;
  p.omega_drive = p.omega_a - kWb;
  p.g_linearized_override = g_over_omega_b * kWb;
  return p;
}

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double rel(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// Fixed-seed draws for property tests.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  bool coin() { return uniform(0.0, 1.0) < 0.5; }

  // Random physical parameter set in omega_b units around the canonical one.
  SystemParams params(bool gain) {
    SystemParams p = canonical(1.0, 0.0);
    p.kappa_m = uniform(0.05, 0.5) * kWb;
    p.kappa_a = (gain ? 1.0 : -1.0) * uniform(0.05, 0.5) * kWb;
    p.gamma_b = log_uniform(1e-6, 1e-3) * kWb;
    p.j_coupling = uniform(0.0, 0.4) * kWb;
    p.omega_drive = p.omega_a + uniform(-2.0, -0.2) * kWb;
    p.g_linearized_override = uniform(0.001, 0.05) * kWb;
    return p;
  }

private:
  std::mt19937_64 rng_;
};

} // namespace testing
