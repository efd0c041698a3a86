#pragma once

// Linear three-mode dynamics in the quadrature basis
//   u = (x_a, p_a, x_b, p_b, x_m, p_m),  x = (o + o^+)/sqrt2,  p = (o - o^+)/(i sqrt2).
// The covariance V_ij = <{du_i, du_j}>/2 obeys dV/dt = A V + V A^T + D.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ptmag/model.hpp"

namespace ptmag {

using Mat6 = Eigen::Matrix<double, 6, 6>;

enum class InitialHotModes {
  PhononAndMagnon, // phonon and magnon start at n_th, cavity in vacuum
  PhononOnly,      // only the phonon starts at n_th
};

struct CovarianceState {
  double time = 0.0; // s
  Mat6 cov = Mat6::Zero();
  double n_phonon = 0.0;
};

struct StabilityReport {
  std::array<cplx, 6> eigenvalues{};
  bool stable = false;
  double margin = 0.0; // largest real part
};

struct EvolveOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double divergence_threshold = 1e12;
};

Mat6 drift_matrix(const SystemParams &p, CouplingPhase phase = CouplingPhase::RotateReal);

/// Symmetrized diffusion matrix. The gain cavity's inverted-order input noise
/// contributes |kappa_a|/2 per quadrature, as a lossy cavity would.
Mat6 diffusion_matrix(const SystemParams &p, double n_th);

StabilityReport stability(const SystemParams &p);

Mat6 initial_covariance(double n_th, InitialHotModes hot = InitialHotModes::PhononAndMagnon);

/// (V_xbxb + V_pbpb - 1) / 2
double phonon_occupancy(const Mat6 &cov);

/// max |A V + V A^T + D|
double lyapunov_residual(const Mat6 &a, const Mat6 &v, const Mat6 &d);

using CovarianceObserver = std::function<void(const CovarianceState &)>;

/// Integrates the covariance from v0 at t_grid[0] (must be 0) and reports one
/// state per grid point through `observe`. Throws UnstableError once any
/// entry exceeds the divergence threshold; states already observed stay valid.
void evolve_covariance(const SystemParams &p, double n_th, const Mat6 &v0,
                       std::span<const double> t_grid, const CovarianceObserver &observe,
                       const EvolveOptions &opts = {});

std::vector<CovarianceState> evolve_covariance(const SystemParams &p, double n_th,
                                               const Mat6 &v0,
                                               std::span<const double> t_grid,
                                               const EvolveOptions &opts = {});

/// Solves A V + V A^T + D = 0. Throws UnstableError when A is not Hurwitz.
CovarianceState steady_covariance(const SystemParams &p, double n_th);

} // namespace ptmag
