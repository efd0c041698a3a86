#include <algorithm>
#include <cmath>
#include <sstream>

#include "ptmag/cli.hpp"
#include "ptmag/cooling.hpp"
#include "ptmag/csv.hpp"
#include "ptmag/dynamics.hpp"
#include "ptmag/errors.hpp"
#include "ptmag/spectrum.hpp"
#include "ptmag/supermodes.hpp"

namespace ptmag::cli {

namespace {

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

CheckResult bound(std::string name, double value, double limit) {
  CheckResult r{std::move(name), value <= limit ? CheckStatus::Pass : CheckStatus::Fail, {}};
  r.detail = csv::number(value) + " (limit " + csv::number(limit) + ")";
  return r;
}

SystemParams with_coupling(SystemParams p, double g) {
  p.g_linearized_override = g;
  return p;
}

void supermode_checks(const SystemParams &p, std::vector<CheckResult> &out) {
  if (rel_diff(p.omega_a, p.omega_m) > 1e-12) {
    out.push_back({"supermode_identities", CheckStatus::Skip, "omega_a != omega_m"});
    return;
  }
  const SupermodePair s = supermode_frequencies(p);
  const cplx i(0.0, 1.0);
  const double w0 = p.omega_a;
  const cplx trace = s.xi_plus + s.xi_minus;
  const cplx trace_ref = 2.0 * w0 - i * s.chi_asym;
  out.push_back(bound("supermode_trace", std::abs(trace - trace_ref) / std::abs(trace_ref), 1e-12));
  const cplx prod = (s.xi_plus - w0 + i * s.chi_asym / 2.0) * (s.xi_minus - w0 + i * s.chi_asym / 2.0);
  const double prod_ref = s.gamma_eff * s.gamma_eff - p.j_coupling * p.j_coupling;
  // relative to the scale of the terms being cancelled
  const double prod_scale = std::max({std::abs(prod_ref), s.gamma_eff * s.gamma_eff,
                                      p.j_coupling * p.j_coupling});
  out.push_back(bound("supermode_product", prod_scale == 0.0 ? 0.0 : std::abs(prod - prod_ref) / prod_scale,
                      1e-12));
  out.push_back(bound("supermode_matrix_gap", s.matrix_gap, 1e-12));
  out.push_back({"pt_phase", CheckStatus::Pass, to_string(s.phase)});
}

void spectrum_checks(const SystemParams &p, const RateOptions &opts,
                     std::vector<CheckResult> &out) {
  double additivity = 0.0;
  bool finite = true;
  bool sign_ok = true;
  for (double x : {0.5, 0.8, 0.95, 1.0, 1.05, 1.2, 1.5, -1.0}) {
    try {
      const SpectrumPoint s = force_noise_spectrum(p, x * p.omega_b);
      finite = finite && std::isfinite(s.s_ff);
      additivity = std::max(additivity, rel_diff(s.term_thermal + s.term_cavity, s.s_ff));
      sign_ok = sign_ok && (p.kappa_a < 0.0 || s.s_ff >= 0.0);
    } catch (const PoleError &) {
    }
  }
  out.push_back(bound("spectrum_additivity", additivity, 1e-12));
  out.push_back({"spectrum_finite", finite ? CheckStatus::Pass : CheckStatus::Fail, {}});
  out.push_back({"spectrum_sign", sign_ok ? CheckStatus::Pass : CheckStatus::Fail,
                 p.kappa_a < 0.0 ? "loss cavity: sign unconstrained" : "non-negative"});

  const double g = std::abs(linearized_coupling(p));
  if (g == 0.0) {
    out.push_back({"g_squared_scaling", CheckStatus::Skip, "G = 0"});
  } else {
    // exact only without phonon dressing: the dressed response carries |G|^2 itself
    const SystemParams p1 = with_coupling(p, g);
    const SystemParams p2 = with_coupling(p, 2.0 * g);
    double worst = 0.0;
    for (double x : {1.0, -1.0, 0.9}) {
      try {
        const double s1 = force_noise_spectrum(p1, x * p.omega_b, ResponseVariant::Bare).s_ff;
        const double s2 = force_noise_spectrum(p2, x * p.omega_b, ResponseVariant::Bare).s_ff;
        worst = std::max(worst, rel_diff(s2, 4.0 * s1));
      } catch (const PoleError &) {
      }
    }
    const CoolingRates r1 = scattering_rates(p1, opts);
    const CoolingRates r2 = scattering_rates(p2, opts);
    if (r1.gamma_selfenergy && r2.gamma_selfenergy) {
      worst = std::max({worst, rel_diff(*r2.gamma_selfenergy, 4.0 * *r1.gamma_selfenergy),
                        rel_diff(*r2.delta_omega_b, 4.0 * *r1.delta_omega_b)});
    }
    out.push_back(bound("g_squared_scaling", worst, 1e-10));
  }

  const CoolingRates r = scattering_rates(p, opts);
  CheckResult c{"gamma_consistency", CheckStatus::Pass, {}};
  std::ostringstream d;
  d << "spectrum " << csv::number(r.gamma_net);
  if (r.gamma_selfenergy) {
    d << ", self-energy " << csv::number(*r.gamma_selfenergy) << ", gap "
      << csv::number(r.consistency_gap.value_or(0.0));
  } else {
    d << ", self-energy singular at omega_b";
  }
  c.detail = d.str();
  if (r.consistency_warning) {
    c.status = CheckStatus::Warn;
  }
  out.push_back(c);
}

void cooling_checks(const SystemParams &p, const RateOptions &opts, std::optional<double> n_th,
                    std::vector<CheckResult> &out) {
  if (!n_th) {
    out.push_back({"occupancy", CheckStatus::Skip, "n_th not set"});
    return;
  }
  const CoolingRates r = scattering_rates(p, opts);
  if (!(r.gamma_net + p.gamma_b > 0.0)) {
    out.push_back({"occupancy", CheckStatus::Warn, "Gamma + gamma_b <= 0: no steady occupancy"});
    return;
  }
  const CoolingReport rep = final_phonon_number(r, p.gamma_b, *n_th);
  out.push_back({"occupancy", CheckStatus::Pass,
                 "n_f = " + csv::number(rep.n_f) + (rep.ground_state ? " (ground state)" : "")});
  const CoolingReport hotter = final_phonon_number(r, p.gamma_b, 2.0 * *n_th + 1.0);
  out.push_back({"occupancy_monotone_in_n_th",
                 hotter.n_f > rep.n_f ? CheckStatus::Pass : CheckStatus::Fail, {}});
  if (!rep.n_c || r.a_plus < 0.0) {
    out.push_back({"occupancy_sandwich", CheckStatus::Skip, "net heating"});
    out.push_back({"rate_equation_oracle", CheckStatus::Skip, "net heating"});
    return;
  }
  const double lo = std::min(*rep.n_c, *n_th);
  const double hi = std::max(*rep.n_c, *n_th);
  const double slack = 1e-12 * std::max(1.0, hi);
  out.push_back({"occupancy_sandwich",
                 rep.n_f >= lo - slack && rep.n_f <= hi + slack ? CheckStatus::Pass
                                                               : CheckStatus::Fail,
                 {}});
  try {
    const double oracle = rate_equation_steady_state(r.a_plus, r.a_minus, p.gamma_b, *n_th);
    out.push_back(bound("rate_equation_oracle", rel_diff(oracle, rep.n_f), 1e-6));
  } catch (const TruncationError &e) {
    out.push_back({"rate_equation_oracle", CheckStatus::Skip, e.what()});
  }
}

void dynamics_checks(const SystemParams &p, std::optional<double> n_th,
                     std::vector<CheckResult> &out) {
  const StabilityReport st = stability(p);
  if (!st.stable) {
    out.push_back({"drift_stability", CheckStatus::Warn,
                   "unstable drift, max Re(lambda) = " + csv::number(st.margin) + " rad/s"});
    return;
  }
  out.push_back({"drift_stability", CheckStatus::Pass,
                 "max Re(lambda) = " + csv::number(st.margin) + " rad/s"});
  const double nt = n_th.value_or(0.0);
  const CovarianceState ss = steady_covariance(p, nt);
  const Mat6 a = drift_matrix(p);
  const Mat6 d = diffusion_matrix(p, nt);
  const double scale = std::max(1.0, ss.cov.cwiseAbs().maxCoeff() * a.cwiseAbs().maxCoeff());
  out.push_back(bound("lyapunov_residual", lyapunov_residual(a, ss.cov, d) / scale, 1e-9));
  out.push_back(bound("lyapunov_symmetry", (ss.cov - ss.cov.transpose()).cwiseAbs().maxCoeff() /
                                               std::max(1.0, ss.cov.cwiseAbs().maxCoeff()),
                      1e-10));
}

} // namespace

std::vector<CheckResult> run_checks(const ResolvedConfig &cfg) {
  const SystemParams &p = cfg.params;
  const RateOptions opts{cfg.weak_coupling_tolerance};
  std::vector<CheckResult> out;

  out.push_back({"thermal_occupancy_monotone",
                 thermal_occupancy(p.omega_b, 300.0) > thermal_occupancy(p.omega_b, 30.0) &&
                         thermal_occupancy(p.omega_b, 30.0) > thermal_occupancy(2.0 * p.omega_b, 30.0)
                     ? CheckStatus::Pass
                     : CheckStatus::Fail,
                 {}});

  auto guarded = [&](const char *name, auto &&fn) {
    try {
      fn();
    } catch (const PhysicsError &e) {
      out.push_back({name, CheckStatus::Warn, e.what()});
    }
  };
  guarded("linearization", [&] {
    const SteadyState ss = steady_state_amplitudes(p);
    out.push_back({"linearization", ss.linearization_warning ? CheckStatus::Warn : CheckStatus::Pass,
                   "dropped detuning shift ratio " + csv::number(ss.linearization_ratio)});
  });
  guarded("supermodes", [&] { supermode_checks(p, out); });
  guarded("spectrum", [&] { spectrum_checks(p, opts, out); });
  guarded("cooling", [&] { cooling_checks(p, opts, cfg.n_th, out); });
  guarded("dynamics", [&] { dynamics_checks(p, cfg.n_th, out); });
  return out;
}

} // namespace ptmag::cli
