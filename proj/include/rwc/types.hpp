#pragma once

#include <cmath>
#include <complex>

namespace rwc {

using ComplexValue = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

inline bool is_finite(ComplexValue z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace rwc
