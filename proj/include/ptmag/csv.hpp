#pragma once

// Comma-separated output with '#' comment headers. Numbers are printed with
// 17 significant digits so a value read back is bit-identical.

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ptmag/cooling.hpp"
#include "ptmag/dynamics.hpp"
#include "ptmag/spectrum.hpp"
#include "ptmag/supermodes.hpp"

namespace ptmag::csv {

std::string number(double v);

void comment(std::ostream &os, const std::string &line);

void eigen_sweep(std::ostream &os, std::span<const EigenSweepRow> rows, double axis_unit);

void spectrum(std::ostream &os, std::span<const SpectrumPoint> rows, double omega_b);

void cooling_rates(std::ostream &os, std::span<const CoolingRateRow> rows, double omega_b);

/// Header `axis_name,n_f`; axis values are divided by axis_unit.
void occupancy(std::ostream &os, std::span<const OccupancyRow> rows, const std::string &axis_name,
               double axis_unit);

/// `t_seconds,n_phonon`, plus the 21 upper-triangle covariance entries when
/// full_covariance is set.
void trajectory_header(std::ostream &os, bool full_covariance);
void trajectory_row(std::ostream &os, const CovarianceState &s, bool full_covariance);

} // namespace ptmag::csv
