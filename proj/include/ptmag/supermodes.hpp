#pragma once

#include <array>
#include <span>
#include <vector>

#include "ptmag/model.hpp"

namespace ptmag {

enum class PtPhase { UnbrokenPT, ExceptionalPoint, BrokenPT };

const char *to_string(PtPhase phase) noexcept;

/// Cavity-magnon supermodes of the non-Hermitian 2x2 problem with
/// omega_a = omega_m = omega0.
struct SupermodePair {
  cplx xi_plus;
  cplx xi_minus;
  double gamma_eff = 0.0;    // (kappa_a + kappa_m)/4
  double chi_asym = 0.0;     // (kappa_m - kappa_a)/2
  double discriminant = 0.0; // J^2 - gamma_eff^2
  PtPhase phase = PtPhase::BrokenPT;
  bool balanced = false;     // kappa_a == kappa_m
  /// Largest distance between the closed form and the eigenvalues of the 2x2
  /// matrix, relative to max |xi|.
  double matrix_gap = 0.0;
};

SupermodePair supermode_frequencies(double omega0, double j, double kappa_a, double kappa_m);

/// Same as above; refuses parameters with omega_a != omega_m.
SupermodePair supermode_frequencies(const SystemParams &p);

/// Eigenvalues of [[omega0 + i kappa_a/2, J], [J, omega0 - i kappa_m/2]],
/// ordered by descending real part (then imaginary part).
std::array<cplx, 2> supermode_matrix_eigenvalues(double omega0, double j, double kappa_a,
                                                 double kappa_m);

/// Coupling J at which the radical vanishes, (kappa_a + kappa_m)/4.
double ep_coupling(double kappa_a, double kappa_m);

/// Classification tolerance |J - Gamma_eff| <= 1e-9 max(|kappa_a|, |kappa_m|).
double ep_tolerance(double kappa_a, double kappa_m) noexcept;

enum class EigenAxis { CouplingJ, GainKappaA };

struct EigenSweepRow {
  double axis_value = 0.0;
  SupermodePair modes;
};

/// Eigenfrequencies along `grid`, with xi+/xi- relabelled between
/// consecutive points so each branch stays continuous through the EP.
std::vector<EigenSweepRow> sweep_eigenvalues(EigenAxis axis, std::span<const double> grid,
                                             const SystemParams &fixed);

} // namespace ptmag
