#pragma once

#include <cmath>

namespace qline {

inline constexpr double sinc_series_threshold = 1e-4;

/// sin(x)/x, using 1 - x²/6 + x⁴/120 below |x| < 1e-4.
inline double sinc(double x) {
  if (std::abs(x) < sinc_series_threshold) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace qline
