#pragma once

#include <numbers>

namespace ptmag::constants {

// CODATA 2018 (exact in the 2019 SI).
inline constexpr double hbar = 1.054571817e-34; // J s
inline constexpr double k_boltzmann = 1.380649e-23; // J / K

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Electron gyromagnetic ratio used for the YIG Kittel mode, gamma/2pi = 28 GHz/T.
inline constexpr double gyro_ratio_yig = two_pi * 28.0e9; // rad / (s T)

inline constexpr double yig_spin_density = 4.22e27; // 1 / m^3

} // namespace ptmag::constants
