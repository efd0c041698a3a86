#include "ptmag/supermodes.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "ptmag/errors.hpp"

namespace ptmag {

const char *to_string(PtPhase phase) noexcept {
  switch (phase) {
  case PtPhase::UnbrokenPT:
    return "unbroken_pt";
  case PtPhase::ExceptionalPoint:
    return "exceptional_point";
  case PtPhase::BrokenPT:
    return "broken_pt";
  }
  return "unknown";
}

double ep_tolerance(double kappa_a, double kappa_m) noexcept {
  return 1e-9 * std::max(std::abs(kappa_a), std::abs(kappa_m));
}

double ep_coupling(double kappa_a, double kappa_m) {
  if (!(kappa_a + kappa_m > 0.0)) {
    throw DomainError("kappa_a + kappa_m <= 0: no exceptional point in J");
  }
  return 0.25 * (kappa_a + kappa_m);
}

std::array<cplx, 2> supermode_matrix_eigenvalues(double omega0, double j, double kappa_a,
                                                 double kappa_m) {
  Eigen::Matrix2cd h;
  h << cplx{omega0, 0.5 * kappa_a}, cplx{j, 0.0}, cplx{j, 0.0}, cplx{omega0, -0.5 * kappa_m};
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(h, false);
  std::array<cplx, 2> ev{solver.eigenvalues()(0), solver.eigenvalues()(1)};
  if (ev[0].real() < ev[1].real() || (ev[0].real() == ev[1].real() && ev[0].imag() < ev[1].imag())) {
    std::swap(ev[0], ev[1]);
  }
  return ev;
}

SupermodePair supermode_frequencies(double omega0, double j, double kappa_a, double kappa_m) {
  if (!(std::isfinite(omega0) && omega0 > 0.0)) {
    throw DomainError("omega0 must be > 0");
  }
  if (!(std::isfinite(j) && j >= 0.0) || !std::isfinite(kappa_a) || !std::isfinite(kappa_m)) {
    throw DomainError("supermode rates must be finite with J >= 0");
  }

  SupermodePair s;
  s.gamma_eff = 0.25 * (kappa_a + kappa_m);
  s.chi_asym = 0.5 * (kappa_m - kappa_a);
  s.discriminant = j * j - s.gamma_eff * s.gamma_eff;
  const cplx root = std::sqrt(cplx{s.discriminant, 0.0});
  const cplx centre{omega0, -0.5 * s.chi_asym};
  s.xi_plus = centre + root;
  s.xi_minus = centre - root;

  const double gap = j - std::abs(s.gamma_eff);
  if (std::abs(gap) <= ep_tolerance(kappa_a, kappa_m)) {
    s.phase = PtPhase::ExceptionalPoint;
  } else {
    s.phase = gap > 0.0 ? PtPhase::UnbrokenPT : PtPhase::BrokenPT;
  }
  s.balanced = kappa_a == kappa_m;

  const auto ev = supermode_matrix_eigenvalues(omega0, j, kappa_a, kappa_m);
  const double scale = std::max(std::abs(s.xi_plus), std::abs(s.xi_minus));
  const double direct = std::max(std::abs(ev[0] - s.xi_plus), std::abs(ev[1] - s.xi_minus));
  const double swapped = std::max(std::abs(ev[0] - s.xi_minus), std::abs(ev[1] - s.xi_plus));
  s.matrix_gap = std::min(direct, swapped) / scale;
  return s;
}

SupermodePair supermode_frequencies(const SystemParams &p) {
  validate(p);
  if (std::abs(p.omega_a - p.omega_m) > 1e-12 * std::max(p.omega_a, p.omega_m)) {
    throw DomainError("degenerate-frequency required: supermodes need omega_a == omega_m");
  }
  return supermode_frequencies(p.omega_a, p.j_coupling, p.kappa_a, p.kappa_m);
}

std::vector<EigenSweepRow> sweep_eigenvalues(EigenAxis axis, std::span<const double> grid,
                                             const SystemParams &fixed) {
  if (grid.empty()) {
    throw DomainError("eigenvalue sweep grid is empty");
  }
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw DomainError("eigenvalue sweep grid must be strictly increasing");
    }
  }

  std::vector<EigenSweepRow> rows;
  rows.reserve(grid.size());
  for (double value : grid) {
    SystemParams p = fixed;
    if (axis == EigenAxis::CouplingJ) {
      p.j_coupling = value;
    } else {
      p.kappa_a = value;
    }
    rows.push_back({value, supermode_frequencies(p)});
  }

  for (std::size_t k = 1; k < rows.size(); ++k) {
    const SupermodePair &prev = rows[k - 1].modes;
    SupermodePair &cur = rows[k].modes;
    const double keep = std::abs(cur.xi_plus - prev.xi_plus) + std::abs(cur.xi_minus - prev.xi_minus);
    const double swap = std::abs(cur.xi_plus - prev.xi_minus) + std::abs(cur.xi_minus - prev.xi_plus);
    if (swap < keep) {
      std::swap(cur.xi_plus, cur.xi_minus);
    }
  }
  return rows;
}

} // namespace ptmag
