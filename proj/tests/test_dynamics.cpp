#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ptmag/cooling.hpp"
#include "ptmag/dynamics.hpp"
#include "ptmag/errors.hpp"
#include "ptmag/grid.hpp"
#include "ptmag/supermodes.hpp"
#include "support.hpp"

using namespace ptmag;
using namespace testing;

namespace {

std::vector<double> times(double end_over_omega_b, int points) {
  std::vector<double> t = linspace(0.0, end_over_omega_b / kWb, points);
  return t;
}

// Lossy cavity, detuned drive: stable and quick to relax.
SystemParams stable_set(double g) {
  SystemParams p = canonical(-1.0, g);
  p.gamma_b = 1e-2 * kWb;
  return p;
}

} // namespace

TEST_SUITE("dynamics") {

TEST_CASE("uncoupled drift is block diagonal") {
  SystemParams p = canonical(1.0, 0.0);
  p.j_coupling = 0.0;
  const Mat6 a = drift_matrix(p);
  Eigen::Matrix2d phonon;
  phonon << -p.gamma_b / 2.0, p.omega_b, -p.omega_b, -p.gamma_b / 2.0;
  CHECK((a.block<2, 2>(2, 2) - phonon).cwiseAbs().maxCoeff() == 0.0);
  Mat6 off = a;
  off.block<2, 2>(0, 0).setZero();
  off.block<2, 2>(2, 2).setZero();
  off.block<2, 2>(4, 4).setZero();
  CHECK(off.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("drift trace") {
  Gen g(31);
  for (int k = 0; k < 50; ++k) {
    const SystemParams p = g.params(g.coin());
    CHECK(drift_matrix(p).trace() == doctest::Approx(p.kappa_a - p.kappa_m - p.gamma_b));
  }
}

TEST_CASE("drift eigenvalues reproduce the supermodes") {
  Gen g(32);
  for (int k = 0; k < 100; ++k) {
    SystemParams p = g.params(g.coin());
    p.g_linearized_override = 0.0;
    const Mat6 a = drift_matrix(p);
    Eigen::Matrix4d am;
    am << a.block<2, 2>(0, 0), a.block<2, 2>(0, 4), a.block<2, 2>(4, 0), a.block<2, 2>(4, 4);
    Eigen::EigenSolver<Eigen::Matrix4d> solver(am, false);
    const SupermodePair s = supermode_frequencies(p);
    const cplx i(0.0, 1.0);
    std::vector<cplx> expected{-i * (s.xi_plus - p.omega_drive), -i * (s.xi_minus - p.omega_drive)};
    expected.push_back(std::conj(expected[0]));
    expected.push_back(std::conj(expected[1]));
    const double scale = p.omega_b;
    for (const cplx &e : expected) {
      double nearest = INFINITY;
      for (int m = 0; m < 4; ++m) {
        nearest = std::min(nearest, std::abs(solver.eigenvalues()(m) - e));
      }
      CHECK(nearest / scale < 1e-9);
    }
  }
}

TEST_CASE("complex coupling phase is a gauge choice") {
  SystemParams p = stable_set(0.0);
  p.g_linearized_override.reset();
  p.g_single = 1.0;
  p.rabi = 2e13;
  const auto a = stability(p);
  const Mat6 keep = drift_matrix(p, CouplingPhase::Keep);
  Eigen::EigenSolver<Mat6> solver(keep, false);
  std::vector<double> re_keep, re_rot;
  for (int k = 0; k < 6; ++k) {
    re_keep.push_back(solver.eigenvalues()(k).real());
    re_rot.push_back(a.eigenvalues[k].real());
  }
  std::sort(re_keep.begin(), re_keep.end());
  std::sort(re_rot.begin(), re_rot.end());
  for (int k = 0; k < 6; ++k) {
    CHECK(re_keep[k] == doctest::Approx(re_rot[k]).scale(p.omega_b).epsilon(1e-9));
  }
}

TEST_CASE("diffusion") {
  const SystemParams p = canonical(1.0, 0.03);
  const Mat6 d0 = diffusion_matrix(p, 0.0);
  CHECK(d0(2, 2) == p.gamma_b / 2.0);
  CHECK(d0(3, 3) == p.gamma_b / 2.0);
  CHECK(d0(0, 0) == d0(4, 4));
  CHECK(d0(1, 1) == d0(5, 5));
  const SystemParams loss = canonical(-1.0, 0.03);
  CHECK(diffusion_matrix(loss, 5.0) == diffusion_matrix(p, 5.0));
  Gen g(33);
  for (int k = 0; k < 50; ++k) {
    const Mat6 d = diffusion_matrix(g.params(g.coin()), g.uniform(0.0, 1e4));
    Eigen::SelfAdjointEigenSolver<Mat6> solver(d);
    CHECK(solver.eigenvalues().minCoeff() >= 0.0);
  }
  CHECK_THROWS_AS(diffusion_matrix(p, -1.0), DomainError);
}

TEST_CASE("stability of the uncoupled cavity follows the sign of kappa_a") {
  SystemParams gain = canonical(1.0, 0.0);
  gain.j_coupling = 0.0;
  const StabilityReport r = stability(gain);
  CHECK_FALSE(r.stable);
  CHECK(r.margin == doctest::Approx(gain.kappa_a / 2.0));
  SystemParams loss = canonical(-1.0, 0.0);
  loss.j_coupling = 0.0;
  CHECK(stability(loss).stable);
}

TEST_CASE("canonical gain parameters are linearly unstable") {
  // regression values, omega_b units
  const StabilityReport strong = stability(canonical(1.0, 0.03));
  const StabilityReport weak = stability(canonical(1.0, 0.01));
  CHECK_FALSE(strong.stable);
  CHECK_FALSE(weak.stable);
  CHECK(strong.margin / kWb == doctest::Approx(0.0382).epsilon(0.01));
  CHECK(weak.margin / kWb == doctest::Approx(0.0200).epsilon(0.01));
  CHECK(stability(canonical(-1.0, 0.03)).stable);
}

TEST_CASE("initial covariance") {
  const Mat6 v = initial_covariance(100.0);
  CHECK(phonon_occupancy(v) == doctest::Approx(100.0));
  CHECK(v(4, 4) == 100.5);
  CHECK(v(0, 0) == 0.5);
  CHECK(initial_covariance(100.0, InitialHotModes::PhononOnly)(4, 4) == 0.5);
}

TEST_CASE("thermal phonon stays thermal without couplings") {
  SystemParams p = canonical(-1.0, 0.0);
  p.j_coupling = 0.0;
  p.gamma_b = 0.05 * kWb;
  const auto states = evolve_covariance(p, 250.0, initial_covariance(250.0), times(200.0, 41));
  for (const CovarianceState &s : states) {
    CHECK(s.n_phonon == doctest::Approx(250.0).epsilon(1e-8));
  }
  CHECK(steady_covariance(p, 250.0).n_phonon == doctest::Approx(250.0).epsilon(1e-10));
}

TEST_CASE("Lyapunov residual and symmetry") {
  Gen g(34);
  int solved = 0;
  for (int k = 0; k < 60; ++k) {
    const SystemParams p = g.params(false);
    const double nth = g.uniform(0.0, 1e3);
    if (!stability(p).stable) {
      CHECK_THROWS_AS(steady_covariance(p, nth), UnstableError);
      continue;
    }
    const CovarianceState s = steady_covariance(p, nth);
    const Mat6 d = diffusion_matrix(p, nth);
    CHECK(lyapunov_residual(drift_matrix(p), s.cov, d) <= 1e-9 * d.cwiseAbs().maxCoeff());
    CHECK((s.cov - s.cov.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * s.cov.cwiseAbs().maxCoeff());
    ++solved;
  }
  CHECK(solved > 10);
}

TEST_CASE("unstable drift has no steady state") {
  CHECK_THROWS_WITH_AS(steady_covariance(canonical(1.0, 0.03), 1e3),
                       doctest::Contains("unstable drift: no steady state"), UnstableError);
}

TEST_CASE("stable trajectory relaxes to the Lyapunov solution") {
  const SystemParams p = stable_set(0.03);
  const double nth = 50.0;
  const std::vector<double> t = times(3000.0, 301);
  const auto states = evolve_covariance(p, nth, initial_covariance(nth), t);
  REQUIRE(states.size() == t.size());
  const CovarianceState ss = steady_covariance(p, nth);
  CHECK(std::abs(states.back().n_phonon - ss.n_phonon) < 1e-6);
  CHECK((states.back().cov - ss.cov).cwiseAbs().maxCoeff() < 1e-6);

  // distance to the fixed point shrinks after the initial transient, down to
  // the integrator's noise floor
  double prev = INFINITY;
  for (std::size_t k = states.size() / 3; k < states.size(); ++k) {
    const double dist = (states[k].cov - ss.cov).norm();
    if (prev > 1e-6) {
      CHECK(dist <= prev * (1.0 + 1e-6));
    }
    prev = dist;
  }
  for (const CovarianceState &s : states) {
    CHECK((s.cov - s.cov.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::isfinite(s.cov.determinant()));
    CHECK(s.n_phonon >= -1e-8);
    CHECK(s.time == doctest::Approx(t[&s - states.data()]));
  }
}

TEST_CASE("steady covariance against the rate picture for a lossy cavity") {
  // weak coupling, well resolved sideband: both formalisms describe the same cooling
  SystemParams p = canonical(-1.0, 0.01);
  p.j_coupling = 0.0;
  p.kappa_a = -0.2 * kWb;
  const CovarianceState ss = steady_covariance(p, 100.0);
  CHECK(ss.n_phonon > 0.0);
  CHECK(ss.n_phonon < 100.0);
}

TEST_CASE("divergence is reported with partial output") {
  const SystemParams p = canonical(1.0, 0.03);
  std::vector<CovarianceState> seen;
  CHECK_THROWS_AS(evolve_covariance(p, 1e3, initial_covariance(1e3), times(5000.0, 501),
                                    [&](const CovarianceState &s) { seen.push_back(s); }),
                  UnstableError);
  CHECK_FALSE(seen.empty());
  CHECK(seen.front().time == 0.0);
  CHECK(seen.front().n_phonon == doctest::Approx(1e3));
}

TEST_CASE("time grid validation") {
  const SystemParams p = stable_set(0.03);
  const Mat6 v0 = initial_covariance(1.0);
  CHECK_THROWS_AS(evolve_covariance(p, 1.0, v0, std::vector<double>{1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(evolve_covariance(p, 1.0, v0, std::vector<double>{0.0, 0.0}), DomainError);
  Mat6 skew = v0;
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(evolve_covariance(p, 1.0, skew, std::vector<double>{0.0, 1.0}), DomainError);
  const auto one = evolve_covariance(p, 1.0, v0, std::vector<double>{0.0});
  REQUIRE(one.size() == 1);
  CHECK(one[0].cov == v0);
}

}
