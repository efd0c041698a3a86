#include "ptmag/cooling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ptmag/errors.hpp"

namespace ptmag {

double quantum_limit(double a_plus, double a_minus) {
  if (!std::isfinite(a_plus) || !std::isfinite(a_minus)) {
    throw DomainError("scattering rates must be finite");
  }
  if (a_plus < 0.0) {
    throw DomainError("heating rate A+ must be >= 0");
  }
  if (!(a_minus > a_plus)) {
    throw NetHeatingError("net heating (A- <= A+): no steady cooling limit");
  }
  return a_plus / (a_minus - a_plus);
}

CoolingReport final_phonon_number(const CoolingRates &rates, double gamma_b, double n_th) {
  if (!(std::isfinite(gamma_b) && gamma_b >= 0.0)) {
    throw DomainError("gamma_b must be >= 0");
  }
  if (!(std::isfinite(n_th) && n_th >= 0.0)) {
    throw DomainError("n_th must be >= 0");
  }
  if (!std::isfinite(rates.a_plus) || !std::isfinite(rates.a_minus) ||
      !std::isfinite(rates.gamma_net)) {
    throw DomainError("scattering rates must be finite");
  }
  const double total = rates.gamma_net + gamma_b;
  if (!(total > 0.0)) {
    throw UnstableError("unstable cooling: Gamma + gamma_b <= 0");
  }

  CoolingReport r;
  r.n_f_classical = gamma_b * n_th / total;
  r.n_f_quantum = rates.a_plus / total;
  if (rates.a_plus >= 0.0 && rates.a_minus > rates.a_plus) {
    r.n_c = quantum_limit(rates.a_plus, rates.a_minus);
    r.n_f = (gamma_b * n_th + rates.gamma_net * *r.n_c) / total;
  } else {
    r.n_f = r.n_f_classical + r.n_f_quantum;
  }
  r.ground_state = r.n_f < 1.0;
  return r;
}

double rate_equation_steady_state(double a_plus, double a_minus, double gamma_b, double n_th,
                                  const RateEquationOptions &opts) {
  if (!std::isfinite(a_plus) || !std::isfinite(a_minus)) {
    throw DomainError("scattering rates must be finite");
  }
  if (!(std::isfinite(gamma_b) && gamma_b >= 0.0) || !(std::isfinite(n_th) && n_th >= 0.0)) {
    throw DomainError("gamma_b and n_th must be >= 0");
  }
  // Detailed balance between |n> and |n+1>: both transition rates carry (n+1).
  const double up = a_plus + gamma_b * n_th;
  const double down = a_minus + gamma_b * (n_th + 1.0);
  if (up < 0.0 || !(down > 0.0)) {
    throw DomainError("rate equation needs non-negative transition rates");
  }
  const double r = up / down;
  if (!(r < 1.0)) {
    throw NetHeatingError("rate equation has no normalizable steady state (heating)");
  }
  if (r == 0.0) {
    return 0.0;
  }

  const double log_r = std::log(r);
  const double needed_d = std::floor(std::log(opts.tail_tolerance) / log_r);
  const long long needed = needed_d > 9.0e18 ? static_cast<long long>(9e18)
                                             : std::max(0LL, static_cast<long long>(needed_d));
  long long n_max = needed;
  if (opts.n_trunc) {
    n_max = *opts.n_trunc;
    if (n_max < 0 || std::exp(static_cast<double>(n_max + 1) * log_r) >= opts.tail_tolerance) {
      std::ostringstream os;
      os << "truncation at n = " << n_max << " leaves tail mass above "
         << opts.tail_tolerance << "; use n_trunc >= " << needed;
      throw TruncationError(os.str(), needed);
    }
  } else if (needed > opts.max_trunc) {
    std::ostringstream os;
    os << "geometric tail needs " << needed << " Fock states (cap " << opts.max_trunc << ")";
    throw TruncationError(os.str(), needed);
  }

  // Compensated running sums of P_n and n P_n with P_n proportional to r^n.
  double norm = 0.0, norm_c = 0.0;
  double first = 0.0, first_c = 0.0;
  auto kahan = [](double &sum, double &comp, double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  double weight = 1.0;
  for (long long n = 0; n <= n_max; ++n) {
    if ((n & 4095) == 0) {
      weight = std::exp(static_cast<double>(n) * log_r);
    }
    kahan(norm, norm_c, weight);
    kahan(first, first_c, static_cast<double>(n) * weight);
    weight *= r;
  }
  return first / norm;
}

namespace {

OccupancyRow occupancy_row(double axis, const SystemParams &p, double n_th,
                           const RateOptions &opts) {
  OccupancyRow row;
  row.axis = axis;
  try {
    row.report = final_phonon_number(scattering_rates(p, opts), p.gamma_b, n_th);
  } catch (const PhysicsError &e) {
    row.error = e.what();
  }
  return row;
}

} // namespace

std::vector<OccupancyRow> occupancy_vs_thermal(const SystemParams &p,
                                               std::span<const double> n_th_grid,
                                               const RateOptions &opts) {
  validate(p);
  std::vector<OccupancyRow> out;
  out.reserve(n_th_grid.size());
  std::optional<CoolingRates> rates;
  std::string rate_error;
  try {
    rates = scattering_rates(p, opts);
  } catch (const PhysicsError &e) {
    rate_error = e.what();
  }
  for (double n_th : n_th_grid) {
    OccupancyRow row;
    row.axis = n_th;
    if (!rates) {
      row.error = rate_error;
    } else {
      try {
        row.report = final_phonon_number(*rates, p.gamma_b, n_th);
      } catch (const PhysicsError &e) {
        row.error = e.what();
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<OccupancyRow> occupancy_vs_detuning(const SystemParams &p, double n_th,
                                                std::span<const double> detunings,
                                                const RateOptions &opts) {
  validate(p);
  std::vector<OccupancyRow> out;
  out.reserve(detunings.size());
  for (double d : detunings) {
    out.push_back(occupancy_row(d, with_drive_detuning(p, d), n_th, opts));
  }
  return out;
}

std::vector<OccupancyRow> field_sweep(const SphereSpec &sphere, const SystemParams &base,
                                      std::span<const double> h_grid, double n_th,
                                      const RateOptions &opts) {
  validate(base);
  for (double h : h_grid) {
    if (!(std::isfinite(h) && h >= 0.0 && h <= 1.0)) {
      throw DomainError("bias field grid must lie within [0, 1] T");
    }
  }
  std::vector<OccupancyRow> out;
  out.reserve(h_grid.size());
  for (double h : h_grid) {
    SphereSpec s = sphere;
    s.bias_field = h;
    SystemParams p = base;
    p.omega_m = magnon_frequency_from_field(s);
    out.push_back(occupancy_row(h, p, n_th, opts));
  }
  return out;
}

} // namespace ptmag
