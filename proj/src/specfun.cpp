#include "rwc/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "rwc/errors.hpp"
#include "rwc/quadrature.hpp"

namespace rwc::specfun {
namespace {

using C = ComplexValue;

constexpr double kLogPi = 1.14472988584940017414342735135305871;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640561764;
constexpr double kStirlingRadius = 15.0;

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,         -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,     1.0 / 156.0,          -3617.0 / 122400.0,
    43867.0 / 244188.0,  -174611.0 / 125400.0};

// B_{2k}, k = 1..10
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,   -1.0 / 30.0,        1.0 / 42.0, -1.0 / 30.0,         5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

void check_pole(C s) {
  double n = std::round(s.real());
  if (n <= 0 && std::abs(s - C(n, 0)) < 1e-12)
    throw PoleError("Gamma pole at s = " + std::to_string(n));
}

// sin(pi s) for moderate Im s, with exact argument reduction.
C sin_pi(C s) {
  double n = std::round(s.real());
  C r(s.real() - n, s.imag());
  C v = std::sin(kPi * r);
  return (static_cast<long long>(n) % 2 == 0) ? v : -v;
}

// log sin(pi s), any Im s.
C log_sin_pi(C s) {
  if (std::abs(s.imag()) < 10) return std::log(sin_pi(s));
  bool flip = s.imag() < 0;
  C z = flip ? std::conj(s) : s;
  // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i)
  C iz(0, kPi);
  C v = -iz * z + std::log(std::exp(2.0 * iz * z) - 1.0) - std::log(C(0, 2));
  return flip ? std::conj(v) : v;
}

C stirling_log_gamma(C z) {
  C inv = 1.0 / z;
  C inv2 = inv * inv;
  C series = 0;
  C p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series;
}

C log_gamma_right(C s) {
  C shift = 0;
  C z = s;
  if (std::abs(z) < kStirlingRadius) {
    int n = static_cast<int>(std::ceil(kStirlingRadius - z.real()));
    for (int k = 0; k < n; ++k) shift += std::log(z + static_cast<double>(k));
    z += static_cast<double>(n);
  }
  return stirling_log_gamma(z) - shift;
}

C digamma_right(C s) {
  C shift = 0;
  C z = s;
  if (std::abs(z) < kStirlingRadius) {
    int n = static_cast<int>(std::ceil(kStirlingRadius - z.real()));
    for (int k = 0; k < n; ++k) shift += 1.0 / (z + static_cast<double>(k));
    z += static_cast<double>(n);
  }
  C inv = 1.0 / z;
  C inv2 = inv * inv;
  C series = 0;
  C p = inv2;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    series += kBernoulli[k] / (2.0 * static_cast<double>(k + 1)) * p;
    p *= inv2;
  }
  return std::log(z) - 0.5 * inv - series - shift;
}

C zeta_euler_maclaurin(C s) {
  const int n_cut = std::max(20, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
  const double N = n_cut;
  C sum = 0;
  for (int n = n_cut - 1; n >= 1; --n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  const C n_pow = std::exp(-s * std::log(N));  // N^{-s}
  sum += n_pow * N / (s - 1.0) + 0.5 * n_pow;
  // sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  C rising = s;
  C pw = n_pow / N;
  double fact = 2.0;
  for (int k = 1; k <= 8; ++k) {
    sum += kBernoulli[k - 1] / fact * rising * pw;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    pw /= N * N;
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return sum;
}

}  // namespace

ComplexValue log_gamma_complex(ComplexValue s) {
  if (!is_finite(s)) throw DomainError("log_gamma_complex: non-finite argument");
  check_pole(s);
  if (s.real() < 0.5) return kLogPi - log_sin_pi(s) - log_gamma_right(1.0 - s);
  return log_gamma_right(s);
}

ComplexValue gamma_complex(ComplexValue s) {
  if (std::abs(s.real()) > 170) throw OverflowRisk("gamma_complex: |Re s| > 170, use log_gamma_complex");
  return std::exp(log_gamma_complex(s));
}

ComplexValue digamma_complex(ComplexValue s) {
  check_pole(s);
  if (s.real() < 0.5) {
    C cot;
    if (std::abs(s.imag()) < 10) {
      C r = s - std::round(s.real());
      cot = std::cos(kPi * r) / std::sin(kPi * r);
    } else {
      cot = C(0, s.imag() > 0 ? -1.0 : 1.0);
    }
    return digamma_right(1.0 - s) - kPi * cot;
  }
  return digamma_right(s);
}

ComplexValue log_gamma_r(ComplexValue s) { return -0.5 * s * kLogPi + log_gamma_complex(0.5 * s); }

ComplexValue zeta_complex(ComplexValue s) {
  if (!is_finite(s)) throw DomainError("zeta_complex: non-finite argument");
  if (std::abs(s - 1.0) < 1e-12) throw PoleError("zeta pole at s = 1");
  if (s.real() >= 0) return zeta_euler_maclaurin(s);
  // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
  C reflected = zeta_euler_maclaurin(1.0 - s);
  if (std::abs(s.imag()) < 20) {
    C pre = std::exp(s * std::log(2.0) + (s - 1.0) * kLogPi + log_gamma_complex(1.0 - s));
    return pre * sin_pi(0.5 * s) * reflected;
  }
  C lg = s * std::log(2.0) + (s - 1.0) * kLogPi + log_sin_pi(0.5 * s) + log_gamma_complex(1.0 - s);
  return std::exp(lg) * reflected;
}

ComplexValue zeta_log_derivative(ComplexValue s) {
  const double h = 1e-3;
  C d = (8.0 * (zeta_complex(s + h) - zeta_complex(s - h)) - (zeta_complex(s + 2 * h) - zeta_complex(s - 2 * h))) /
        (12 * h);
  return d / zeta_complex(s);
}

ComplexValue log_xi_complete(ComplexValue s) {
  if (std::abs(s) < 1e-12 || std::abs(s - 1.0) < 1e-12) throw PoleError("xi pole at s = 0 or 1");
  return log_gamma_r(s) + std::log(zeta_complex(s));
}

ComplexValue xi_complete(ComplexValue s) {
  if (std::abs(s) < 1e-12 || std::abs(s - 1.0) < 1e-12) throw PoleError("xi pole at s = 0 or 1");
  return std::exp(log_gamma_r(s)) * zeta_complex(s);
}

namespace {

// Power series through I_{iT}; used for small x.
double bessel_series(double T, double x) {
  C t = std::exp(C(-0.5 * kPi * T, T * std::log(0.5 * x)) - log_gamma_complex(C(1.0, T)));
  C sum = t;
  const double q = 0.25 * x * x;
  double peak = std::abs(t);
  for (int k = 0; k < 100000; ++k) {
    t *= q / ((k + 1.0) * C(k + 1.0, T));
    sum += t;
    double a = std::abs(t);
    peak = std::max(peak, a);
    if (k > q && a < 1e-18 * peak) break;
  }
  return -2.0 * kPi / (-std::expm1(-2.0 * kPi * T)) * sum.imag();
}

// Real-axis integral for small order and small argument.
double bessel_real_axis(double T, double x) {
  const double tmax = std::acosh(std::max(1.0, 45.0 / x));
  auto f = [&](double t) { return std::exp(-x * std::cosh(t)) * std::cos(T * t); };
  double v = quad::adaptive(f, 0.0, tmax, 1e-17, 1e-15);
  return std::exp(0.5 * kPi * T) * v;
}

// Steepest-descent path; valid for x >= T.
double bessel_descent(double T, double x) {
  auto w_of = [&](double u, double* sin_w) {
    double q;
    if (u == 0.0) {
      q = (x - T) / x;
    } else {
      double sh = std::sinh(u);
      double sh_minus_u;
      if (u < 0.1) {
        double u2 = u * u;
        sh_minus_u = u * u2 * (1.0 / 6 + u2 * (1.0 / 120 + u2 * (1.0 / 5040 + u2 / 362880)));
      } else {
        sh_minus_u = sh - u;
      }
      q = ((x - T) * sh + T * sh_minus_u) / (x * sh);
    }
    q = std::clamp(q, 0.0, 1.0);
    *sin_w = std::sqrt(q * (2.0 - q));
    return 2.0 * std::asin(std::sqrt(0.5 * q));
  };
  double s0;
  double w0 = w_of(0.0, &s0);
  const double e0 = T * w0 - x * s0;
  auto g = [&](double u) {
    double sw;
    double w = w_of(u, &sw);
    return std::exp(T * w - x * std::cosh(u) * sw - e0);
  };
  double upper = 1.0 / std::sqrt(x);
  while (g(upper) > 1e-30) upper *= 2.0;
  double err = 0;
  double v = quad::adaptive(g, 0.0, upper, 1e-17, 1e-14, 4000, &err);
  return std::exp(e0) * v;
}

// Path through the saddle t = u0 + i pi/2; valid for 0 < x < T.
double bessel_saddle(double T, double x) {
  const double u0 = std::acosh(T / x);
  auto horizontal = [&](double u) {
    double ph = T * u - x * std::sinh(u);
    return C(std::cos(ph), std::sin(ph));
  };
  auto slant = [&](double s) {
    double a = u0 + s;
    double re = T * s - x * std::cosh(a) * std::sin(s);
    double im = T * a - x * std::sinh(a) * std::cos(s);
    return std::exp(C(re, im)) * C(1.0, -1.0);
  };
  const double tail_start = u0 + 0.5 * kPi;
  auto tail = [&](double u) { return std::exp(C(0.5 * kPi * T - x * std::cosh(u), T * u)); };
  C total = 0;
  if (u0 > 0) total += quad::adaptive(horizontal, 0.0, u0, 1e-14, 1e-14);
  total += quad::adaptive(slant, 0.0, 0.5 * kPi, 1e-14, 1e-14);
  if (0.5 * kPi * T - x * std::cosh(tail_start) > -45) {
    double upper = tail_start + 1.0;
    while (0.5 * kPi * T - x * std::cosh(upper) > -45) upper += 1.0;
    total += quad::adaptive(tail, tail_start, upper, 1e-15, 1e-14);
  }
  return total.real();
}

}  // namespace

ScaledBesselValue bessel_k_imag_scaled(double T, double x, const BesselLimits& limits) {
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("bessel_k_imag_scaled: x must be > 0");
  if (!std::isfinite(T)) throw DomainError("bessel_k_imag_scaled: non-finite order");
  const double order = std::abs(T);
  if (order > limits.max_order) throw DomainError("bessel_k_imag_scaled: order above ceiling");
  if (x > limits.max_argument) throw DomainError("bessel_k_imag_scaled: argument above ceiling");
  ScaledBesselValue out;
  out.order = order;
  out.argument = x;
  out.turning_point = order > 0 && std::abs(x - order) < std::cbrt(order);
  if (x < std::max(2.0, order / 4)) {
    out.value = order < 0.5 ? bessel_real_axis(order, x) : bessel_series(order, x);
  } else if (x < order) {
    out.value = bessel_saddle(order, x);
  } else {
    out.value = bessel_descent(order, x);
  }
  if (!std::isfinite(out.value)) throw DomainError("bessel_k_imag_scaled: non-finite result");
  return out;
}

}  // namespace rwc::specfun
