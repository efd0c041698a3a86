#include "ptmag/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "ptmag/errors.hpp"

namespace ptmag {

namespace {

constexpr int kXa = 0, kPa = 1, kXb = 2, kPb = 3, kXm = 4, kPm = 5;

// Packed upper triangle of a symmetric 6x6 matrix.
constexpr int kPacked = 21;

using Packed = std::vector<double>;

Packed pack(const Mat6 &v) {
  Packed out(kPacked);
  int k = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      out[k++] = v(i, j);
    }
  }
  return out;
}

Mat6 unpack(const Packed &x) {
  Mat6 v;
  int k = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      v(i, j) = x[k];
      v(j, i) = x[k];
      ++k;
    }
  }
  return v;
}

// Rotation-plus-damping block for d o/dt = (i delta + rate) o.
void mode_block(Mat6 &a, int x, double delta, double rate) {
  a(x, x) = rate;
  a(x, x + 1) = -delta;
  a(x + 1, x) = delta;
  a(x + 1, x + 1) = rate;
}

std::string describe(const StabilityReport &r) {
  std::ostringstream os;
  os << "unstable drift: no steady state (max Re lambda = " << r.margin << " rad/s)";
  return os.str();
}

} // namespace

Mat6 drift_matrix(const SystemParams &p, CouplingPhase phase) {
  validate(p);
  const cplx g = linearized_coupling(p, phase);
  const double j = p.j_coupling;

  Mat6 a = Mat6::Zero();
  mode_block(a, kXa, p.delta_a(), 0.5 * p.kappa_a);
  // d b/dt = (-i omega_b - gamma_b/2) b
  mode_block(a, kXb, -p.omega_b, -0.5 * p.gamma_b);
  mode_block(a, kXm, p.delta_m(), -0.5 * p.kappa_m);

  // -i J m in the cavity equation and -i J a in the magnon equation
  a(kXa, kPm) += j;
  a(kPa, kXm) -= j;
  a(kXm, kPa) += j;
  a(kPm, kXa) -= j;

  // -i (G m^+ + G* m) drives p_b; -i G (b + b^+) drives the magnon.
  a(kPb, kXm) -= 2.0 * g.real();
  a(kPb, kPm) -= 2.0 * g.imag();
  a(kXm, kXb) += 2.0 * g.imag();
  a(kPm, kXb) -= 2.0 * g.real();
  return a;
}

Mat6 diffusion_matrix(const SystemParams &p, double n_th) {
  validate(p);
  if (!(std::isfinite(n_th) && n_th >= 0.0)) {
    throw DomainError("n_th must be >= 0");
  }
  Mat6 d = Mat6::Zero();
  const double cavity = 0.5 * std::abs(p.kappa_a);
  const double phonon = p.gamma_b * (n_th + 0.5);
  const double magnon = 0.5 * p.kappa_m;
  d(kXa, kXa) = d(kPa, kPa) = cavity;
  d(kXb, kXb) = d(kPb, kPb) = phonon;
  d(kXm, kXm) = d(kPm, kPm) = magnon;
  return d;
}

StabilityReport stability(const SystemParams &p) {
  const Mat6 a = drift_matrix(p);
  Eigen::EigenSolver<Mat6> solver(a, false);
  StabilityReport r;
  const auto ev = solver.eigenvalues();
  r.margin = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 6; ++i) {
    r.eigenvalues[i] = ev(i);
    r.margin = std::max(r.margin, ev(i).real());
  }
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
  });
  r.stable = r.margin < 0.0;
  return r;
}

Mat6 initial_covariance(double n_th, InitialHotModes hot) {
  if (!(std::isfinite(n_th) && n_th >= 0.0)) {
    throw DomainError("n_th must be >= 0");
  }
  Mat6 v = Mat6::Identity() * 0.5;
  v(kXb, kXb) = v(kPb, kPb) = n_th + 0.5;
  if (hot == InitialHotModes::PhononAndMagnon) {
    v(kXm, kXm) = v(kPm, kPm) = n_th + 0.5;
  }
  return v;
}

double phonon_occupancy(const Mat6 &cov) { return 0.5 * (cov(kXb, kXb) + cov(kPb, kPb) - 1.0); }

double lyapunov_residual(const Mat6 &a, const Mat6 &v, const Mat6 &d) {
  return (a * v + v * a.transpose() + d).cwiseAbs().maxCoeff();
}

void evolve_covariance(const SystemParams &p, double n_th, const Mat6 &v0,
                       std::span<const double> t_grid, const CovarianceObserver &observe,
                       const EvolveOptions &opts) {
  namespace ode = boost::numeric::odeint;

  if (t_grid.empty()) {
    return;
  }
  if (t_grid.front() != 0.0) {
    throw DomainError("time grid must start at 0");
  }
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > t_grid[k - 1])) {
      throw DomainError("time grid must be strictly increasing");
    }
  }
  if ((v0 - v0.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, v0.cwiseAbs().maxCoeff())) {
    throw DomainError("initial covariance must be symmetric");
  }

  const Mat6 a = drift_matrix(p);
  const Mat6 d = diffusion_matrix(p, n_th);
  const double limit = opts.divergence_threshold;

  auto diverged = [&](double t) {
    std::ostringstream os;
    os << "covariance diverged (|V| > " << limit << ") at t = " << t << " s; "
       << describe(stability(p));
    return UnstableError(os.str());
  };

  auto rhs = [&](const Packed &x, Packed &dxdt, double t) {
    const Mat6 v = unpack(x);
    if (!v.allFinite() || v.cwiseAbs().maxCoeff() > limit) {
      throw diverged(t);
    }
    const Mat6 av = a * v;
    dxdt = pack(av + av.transpose() + d);
  };

  auto emit = [&](const Packed &x, double t) {
    const Mat6 v = unpack(x);
    if (!v.allFinite() || v.cwiseAbs().maxCoeff() > limit) {
      throw diverged(t);
    }
    observe(CovarianceState{t, v, phonon_occupancy(v)});
  };

  Packed state = pack(v0);
  if (t_grid.size() == 1) {
    emit(state, 0.0);
    return;
  }

  // Initial step: a small fraction of the fastest time scale.
  const double fastest = std::max(a.cwiseAbs().maxCoeff(), 1.0 / t_grid.back());
  const double dt0 = std::min(1e-3 / fastest, t_grid[1] - t_grid[0]);

  auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol,
                                      ode::runge_kutta_dopri5<Packed>());
  ode::integrate_times(stepper, rhs, state, t_grid.begin(), t_grid.end(), dt0, emit);
}

std::vector<CovarianceState> evolve_covariance(const SystemParams &p, double n_th,
                                               const Mat6 &v0,
                                               std::span<const double> t_grid,
                                               const EvolveOptions &opts) {
  std::vector<CovarianceState> out;
  out.reserve(t_grid.size());
  evolve_covariance(
      p, n_th, v0, t_grid, [&](const CovarianceState &s) { out.push_back(s); }, opts);
  return out;
}

CovarianceState steady_covariance(const SystemParams &p, double n_th) {
  const StabilityReport report = stability(p);
  if (!report.stable) {
    throw UnstableError(describe(report));
  }
  const Mat6 a = drift_matrix(p);
  const Mat6 d = diffusion_matrix(p, n_th);

  // vec(A V + V A^T) = (I (x) A + A (x) I) vec(V), column-major vec.
  using Mat36 = Eigen::Matrix<double, 36, 36>;
  Mat36 k = Mat36::Zero();
  for (int i = 0; i < 6; ++i) {
    k.block<6, 6>(6 * i, 6 * i) += a;
    for (int j = 0; j < 6; ++j) {
      k.block<6, 6>(6 * i, 6 * j).diagonal().array() += a(i, j);
    }
  }
  Eigen::Matrix<double, 36, 1> rhs = -Eigen::Map<const Eigen::Matrix<double, 36, 1>>(d.data());
  Eigen::Matrix<double, 36, 1> sol = k.fullPivLu().solve(rhs);
  Mat6 v = Eigen::Map<Mat6>(sol.data());
  v = 0.5 * (v + v.transpose()).eval();

  return CovarianceState{std::numeric_limits<double>::infinity(), v, phonon_occupancy(v)};
}

} // namespace ptmag
