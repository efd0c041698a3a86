#include "ptmag/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace ptmag::csv {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::string number(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void comment(std::ostream &os, const std::string &line) { os << "# " << line << '\n'; }

void eigen_sweep(std::ostream &os, std::span<const EigenSweepRow> rows, double axis_unit) {
  os << "axis,re_xi_plus,im_xi_plus,re_xi_minus,im_xi_minus,phase\n";
  for (const EigenSweepRow &r : rows) {
    os << number(r.axis_value / axis_unit) << ',' << number(r.modes.xi_plus.real()) << ','
       << number(r.modes.xi_plus.imag()) << ',' << number(r.modes.xi_minus.real()) << ','
       << number(r.modes.xi_minus.imag()) << ',' << to_string(r.modes.phase) << '\n';
  }
}

void spectrum(std::ostream &os, std::span<const SpectrumPoint> rows, double omega_b) {
  os << "omega_over_omega_b,s_ff,term_thermal,term_cavity\n";
  for (const SpectrumPoint &r : rows) {
    os << number(r.omega / omega_b) << ',' << number(r.s_ff) << ',' << number(r.term_thermal)
       << ',' << number(r.term_cavity) << '\n';
  }
}

void cooling_rates(std::ostream &os, std::span<const CoolingRateRow> rows, double omega_b) {
  os << "detuning_over_omega_b,a_plus,a_minus,gamma_net,gamma_selfenergy,delta_omega_b\n";
  for (const CoolingRateRow &r : rows) {
    const CoolingRates &c = r.rates;
    os << number(r.detuning / omega_b) << ',' << number(c.a_plus) << ',' << number(c.a_minus)
       << ',' << number(c.gamma_net) << ',' << number(c.gamma_selfenergy.value_or(kNaN)) << ','
       << number(c.delta_omega_b.value_or(kNaN)) << '\n';
  }
}

void occupancy(std::ostream &os, std::span<const OccupancyRow> rows, const std::string &axis_name,
               double axis_unit) {
  os << axis_name << ",n_f\n";
  for (const OccupancyRow &r : rows) {
    os << number(r.axis / axis_unit) << ',' << number(r.report ? r.report->n_f : kNaN) << '\n';
  }
}

void trajectory_header(std::ostream &os, bool full_covariance) {
  os << "t_seconds,n_phonon";
  if (full_covariance) {
    for (int i = 0; i < 6; ++i) {
      for (int j = i; j < 6; ++j) {
        os << ",v" << i << j;
      }
    }
  }
  os << '\n';
}

void trajectory_row(std::ostream &os, const CovarianceState &s, bool full_covariance) {
  os << number(s.time) << ',' << number(s.n_phonon);
  if (full_covariance) {
    for (int i = 0; i < 6; ++i) {
      for (int j = i; j < 6; ++j) {
        os << ',' << number(s.cov(i, j));
      }
    }
  }
  os << '\n';
}

} // namespace ptmag::csv
