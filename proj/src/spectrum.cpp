#include "ptmag/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "ptmag/errors.hpp"
#include "ptmag/grid.hpp"

namespace ptmag {

namespace {

constexpr double kPoleTol = 64.0 * std::numeric_limits<double>::epsilon();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

cplx checked_inverse(cplx den, double scale, const char *mode, double omega) {
  if (std::abs(den) <= kPoleTol * scale) {
    throw PoleError(mode, omega);
  }
  return 1.0 / den;
}

double coupling_squared(const SystemParams &p) { return std::norm(linearized_coupling(p)); }

} // namespace

SusceptibilityTriple susceptibilities(const SystemParams &p, double omega) {
  validate(p);
  const cplx i{0.0, 1.0};
  const double wa = omega + p.delta_a();
  const double wb = omega - p.omega_b;
  const double wm = omega + p.delta_m();
  SusceptibilityTriple s;
  s.chi_a = checked_inverse(-i * wa - 0.5 * p.kappa_a,
                            std::abs(omega) + std::abs(p.delta_a()) + std::abs(p.kappa_a),
                            "cavity", omega);
  s.chi_b = checked_inverse(-i * wb + 0.5 * p.gamma_b,
                            std::abs(omega) + p.omega_b + p.gamma_b, "phonon", omega);
  s.chi_m = checked_inverse(-i * wm + 0.5 * p.kappa_m,
                            std::abs(omega) + std::abs(p.delta_m()) + p.kappa_m, "magnon",
                            omega);
  return s;
}

namespace {

cplx response_from(const SystemParams &p, const SusceptibilityTriple &s, double g2,
                   double omega, ResponseVariant variant) {
  const double j2 = p.j_coupling * p.j_coupling;
  if (variant == ResponseVariant::WithPhonon) {
    const cplx cavity = j2 * s.chi_a * s.chi_m;
    const cplx phonon = g2 * s.chi_b * s.chi_m;
    const cplx den = 1.0 + cavity + phonon;
    return s.chi_m * checked_inverse(den, 1.0 + std::abs(cavity) + std::abs(phonon),
                                     "total (phonon-dressed)", omega);
  }
  const cplx cavity = j2 * s.chi_a;
  const cplx magnon = 1.0 / s.chi_m;
  return checked_inverse(cavity + magnon, std::abs(cavity) + std::abs(magnon), "total (bare)",
                         omega);
}

} // namespace

cplx total_response(const SystemParams &p, double omega, ResponseVariant variant) {
  return response_from(p, susceptibilities(p, omega), coupling_squared(p), omega, variant);
}

SpectrumPoint force_noise_spectrum(const SystemParams &p, double omega,
                                   ResponseVariant variant) {
  const double g2 = coupling_squared(p);
  if (g2 == 0.0) {
    return {omega, 0.0, 0.0, 0.0};
  }
  const SusceptibilityTriple here = susceptibilities(p, omega);
  const SusceptibilityTriple mirrored = susceptibilities(p, -omega);
  const cplx chi_here = response_from(p, here, g2, omega, variant);
  const cplx chi_mirrored = response_from(p, mirrored, g2, -omega, variant);

  SpectrumPoint pt;
  pt.omega = omega;
  pt.term_thermal = g2 * p.gamma_b * std::norm(chi_here);
  pt.term_cavity = g2 * p.kappa_a * p.j_coupling * p.j_coupling * std::norm(chi_mirrored) *
                   std::norm(mirrored.chi_a);
  pt.s_ff = pt.term_thermal + pt.term_cavity;
  return pt;
}

cplx self_energy(const SystemParams &p, double omega) {
  const double g2 = coupling_squared(p);
  if (g2 == 0.0) {
    return {0.0, 0.0};
  }
  const cplx here = total_response(p, omega, ResponseVariant::Bare);
  const cplx mirrored = total_response(p, -omega, ResponseVariant::Bare);
  return cplx{0.0, -g2} * (here - std::conj(mirrored));
}

CoolingRates scattering_rates(const SystemParams &p, const RateOptions &opts) {
  CoolingRates r;
  r.a_minus = force_noise_spectrum(p, p.omega_b).s_ff;
  r.a_plus = force_noise_spectrum(p, -p.omega_b).s_ff;
  r.gamma_net = r.a_minus - r.a_plus;
  r.negative_spectrum = r.a_minus < 0.0 || r.a_plus < 0.0;

  try {
    const cplx sigma = self_energy(p, p.omega_b);
    r.gamma_selfenergy = -2.0 * sigma.imag();
    r.delta_omega_b = sigma.real();
  } catch (const PoleError &) {
    r.consistency_warning = true;
    return r;
  }

  const double scale = std::max(std::abs(r.gamma_net), std::abs(*r.gamma_selfenergy));
  r.consistency_gap = scale > 0.0 ? std::abs(r.gamma_net - *r.gamma_selfenergy) / scale : 0.0;
  r.consistency_warning = !(*r.consistency_gap <= opts.weak_coupling_tolerance);
  return r;
}

std::vector<SpectrumPoint> spectrum_sweep(const SystemParams &p, std::span<const double> omegas) {
  validate(p);
  std::vector<SpectrumPoint> out;
  out.reserve(omegas.size());
  for (double w : omegas) {
    try {
      out.push_back(force_noise_spectrum(p, w));
    } catch (const PoleError &) {
      out.push_back({w, kNaN, kNaN, kNaN});
    }
  }
  return out;
}

std::vector<CoolingRateRow> cooling_rate_sweep(const SystemParams &p,
                                               std::span<const double> detunings,
                                               const RateOptions &opts) {
  validate(p);
  std::vector<CoolingRateRow> out;
  out.reserve(detunings.size());
  for (double d : detunings) {
    CoolingRateRow row;
    row.detuning = d;
    try {
      row.rates = scattering_rates(with_drive_detuning(p, d), opts);
    } catch (const PhysicsError &) {
      row.ok = false;
      row.rates.a_plus = row.rates.a_minus = row.rates.gamma_net = kNaN;
    }
    out.push_back(row);
  }
  return out;
}

namespace {

double safe_spectrum(const SystemParams &p, double omega, ResponseVariant variant) {
  try {
    return force_noise_spectrum(p, omega, variant).s_ff;
  } catch (const PoleError &) {
    return kNaN;
  }
}

int refinement_bits(double lo, double hi, double tol) {
  const double span = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
  const double rel = tol / span;
  const int max_bits = std::numeric_limits<double>::digits / 2;
  if (!(rel > 0.0)) {
    return max_bits;
  }
  const int bits = static_cast<int>(std::ceil(1.0 - std::log2(rel))) + 1;
  return std::clamp(bits, 8, max_bits);
}

} // namespace

std::vector<Extremum> spectrum_extrema(const SystemParams &p, double lo, double hi, bool maxima,
                                       const PeakSearch &search) {
  validate(p);
  if (!(hi > lo) || search.points < 3) {
    throw DomainError("peak search needs hi > lo and at least 3 grid points");
  }
  const double tol = search.tolerance.value_or(1e-6 * p.omega_b);
  const int bits = refinement_bits(lo, hi, tol);
  const std::vector<double> grid = linspace(lo, hi, search.points);
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    values[k] = safe_spectrum(p, grid[k], search.variant);
  }

  const double sign = maxima ? -1.0 : 1.0; // brent minimizes
  auto objective = [&](double w) {
    const double v = safe_spectrum(p, w, search.variant);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : sign * v;
  };

  std::vector<Extremum> out;
  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    const double a = sign * values[k - 1], b = sign * values[k], c = sign * values[k + 1];
    if (!(b < a && b <= c)) {
      continue;
    }
    const auto [w, f] =
        boost::math::tools::brent_find_minima(objective, grid[k - 1], grid[k + 1], bits);
    if (f <= b) {
      out.push_back({w, sign * f});
    } else {
      out.push_back({grid[k], values[k]});
    }
  }
  return out;
}

Extremum spectrum_global_maximum(const SystemParams &p, double lo, double hi,
                                 const PeakSearch &search) {
  validate(p);
  if (!(hi > lo) || search.points < 2) {
    throw DomainError("peak search needs hi > lo and at least 2 grid points");
  }
  const std::vector<double> grid = linspace(lo, hi, search.points);
  Extremum best{kNaN, -std::numeric_limits<double>::infinity()};
  for (double w : grid) {
    const double v = safe_spectrum(p, w, search.variant);
    if (!std::isnan(v) && v > best.value) {
      best = {w, v};
    }
  }
  if (std::isnan(best.omega)) {
    throw DomainError("spectrum is undefined over the whole search window");
  }
  for (const Extremum &e : spectrum_extrema(p, lo, hi, true, search)) {
    if (e.value >= best.value) {
      best = e;
    }
  }
  return best;
}

} // namespace ptmag
