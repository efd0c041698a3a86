#pragma once

#include <cstddef>
#include <vector>

namespace ptmag {

/// `points` evenly spaced values from start to stop inclusive; a single point
/// yields {start}.
inline std::vector<double> linspace(double start, double stop, std::size_t points) {
  std::vector<double> out;
  if (points == 0) {
    return out;
  }
  out.reserve(points);
  if (points == 1) {
    out.push_back(start);
    return out;
  }
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) {
    out.push_back(k + 1 == points ? stop : start + step * static_cast<double>(k));
  }
  return out;
}

} // namespace ptmag
