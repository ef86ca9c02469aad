#include "rwc/mainterm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "rwc/arith.hpp"
#include "rwc/errors.hpp"
#include "rwc/specfun.hpp"

namespace rwc::mainterm {
namespace {

using specfun::log_gamma_complex;
using specfun::log_gamma_r;
using specfun::zeta_complex;

constexpr ComplexValue kI(0, 1);

double log_abs_gamma(ComplexValue z) { return log_gamma_complex(z).real(); }

// (1/2 pi i) int f(s) ds over the vertical line, trapezoid in Im s.
template <class F>
ComplexValue line_integral(const ContourSpec& c, F&& f, double* tail) {
  const int n = static_cast<int>(std::ceil(c.half_height / c.step));
  const double h = c.half_height / n;
  ComplexValue sum = 0;
  for (int j = -n; j <= n; ++j) sum += f(ComplexValue(c.abscissa, j * h));
  double edge = std::abs(f(ComplexValue(c.abscissa, c.half_height))) +
                std::abs(f(ComplexValue(c.abscissa, -c.half_height)));
  // e^{s^2} tail beyond the cut: int_H^inf e^{-t^2} dt < e^{-H^2} / (2H)
  *tail = edge / (2 * c.half_height) / (2 * kPi);
  return sum * h / (2 * kPi);
}

double real_line_value(const ContourSpec& c, ComplexValue v, double tail, const char* who) {
  if (tail > 1e-8) throw ContourError(std::string(who) + ": tail estimate " + std::to_string(tail));
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
    throw ContourError(std::string(who) + ": imaginary residue " + std::to_string(v.imag()));
  (void)c;
  return v.real();
}

// log cos(pi s), stable for large |Im s|
ComplexValue log_cos_pi(ComplexValue s) {
  ComplexValue a = s.imag() >= 0 ? -kI * kPi * s : kI * kPi * s;
  ComplexValue w = std::exp(-2.0 * a);
  return a - std::log(2.0) + std::log(1.0 + w);
}

double log_cosh(double x) {
  x = std::abs(x);
  return x - std::log(2.0) + std::log1p(std::exp(-2 * x));
}

ComplexValue log_v1_ratio(ComplexValue s, double t, Parity parity) {
  double a = parity == Parity::even ? 0.5 : 1.5;
  ComplexValue it(0, t);
  return 2.0 * (log_gamma_r(a + s + it) + log_gamma_r(a + s - it) - log_gamma_r(a + it) - log_gamma_r(a - it));
}

ComplexValue log_v2_ratio(ComplexValue s, double t, double T) {
  ComplexValue r = 0;
  for (double u : {2 * T + t, 2 * T - t, -2 * T + t, -2 * T - t}) {
    ComplexValue iu(0, u);
    r += log_gamma_r(0.5 + s + iu) - log_gamma_r(0.5 + iu);
  }
  return r;
}

std::vector<double> gamma_pole_abscissae(double shift) {
  std::vector<double> p{0.0};
  for (int k = 0; k < 8; ++k) p.push_back(-shift - 2 * k);
  return p;
}

}  // namespace

void validate_contour(const ContourSpec& c, const std::vector<double>& poles) {
  if (!(c.half_height >= 8)) throw ContourError("contour half_height must be >= 8");
  if (!(c.step > 0)) throw ContourError("contour step must be > 0");
  for (double p : poles)
    if (std::abs(c.abscissa - p) < 0.05)
      throw ContourError("contour abscissa " + std::to_string(c.abscissa) + " within 0.05 of a pole");
}

double smooth_step(double v) {
  if (v <= 0) return 0;
  if (v >= 1) return 1;
  double a = std::exp(-1 / v), b = std::exp(-1 / (1 - v));
  return a / (a + b);
}

BumpFunction::BumpFunction(double lo, double hi, double rise) : lo_(lo), hi_(hi), rise_(rise) {
  if (!(rise > 0) || !(hi - lo >= 2 * rise)) throw DomainError("BumpFunction: need rise > 0 and hi - lo >= 2 rise");
}

double BumpFunction::operator()(double x) const {
  if (x <= lo_ || x >= hi_) return 0;
  return smooth_step((x - lo_) / rise_) * smooth_step((hi_ - x) / rise_);
}

WeightH weight_H(double t, double T) {
  WeightH r;
  if (!(std::abs(t) < 4 * std::abs(T))) {
    r.underflow = true;
    return r;
  }
  ComplexValue a(0.25, T + t / 2), b(0.25, T - t / 2), c(0.25, t / 2);
  double lg = 2 * log_abs_gamma(a) + 2 * log_abs_gamma(b) + 4 * log_abs_gamma(c) -
              4 * log_abs_gamma(ComplexValue(0.5, T)) - 2 * log_abs_gamma(ComplexValue(0.5, t));
  r.value = std::exp(lg);
  r.underflow = r.value == 0;
  return r;
}

double weight_H_leading(double t, double T) { return 8 * kPi / (std::abs(t) * std::sqrt(4 * T * T - t * t)); }

double smooth_cutoff_Z(double x, double eps) {
  if (!(eps > 0 && eps < 0.2)) throw DomainError("smooth_cutoff_Z: eps_param must lie in (0, 0.2)");
  return BumpFunction(eps, 1 - eps, eps)(std::abs(x));
}

double weight_Q(double t, double T, double eps) {
  double a = std::abs(t);
  if (a == 0 || a >= 2 * std::abs(T)) return 0;
  double z = smooth_cutoff_Z(t / (2 * T), eps);
  if (z == 0) return 0;
  return z / (a * std::sqrt(4 * T * T - t * t));
}

double kernel_V1(double x, double t, Parity parity, const ContourSpec& contour) {
  if (!(x > 0)) throw DomainError("kernel_V1: x must be > 0");
  if (!(std::abs(t) >= 1)) throw DomainError("kernel_V1: |t| must be >= 1");
  validate_contour(contour, gamma_pole_abscissae(parity == Parity::even ? 0.5 : 1.5));
  const double lx = std::log(x);
  double tail = 0;
  ComplexValue v = line_integral(contour, [&](ComplexValue s) {
    return std::exp(s * s - s * lx + log_v1_ratio(s, t, parity)) / s;
  }, &tail);
  double r = real_line_value(contour, v, tail, "kernel_V1");
  return contour.abscissa < 0 ? r + 1 : r;
}

double kernel_V2(double x, double t, double T, const ContourSpec& contour) {
  if (!(x > 0)) throw DomainError("kernel_V2: x must be > 0");
  if (!(std::abs(t) < 2 * std::abs(T) - 1)) throw DomainError("kernel_V2: need |t| < 2T - 1");
  validate_contour(contour, gamma_pole_abscissae(0.5));
  const double lx = std::log(x);
  double tail = 0;
  ComplexValue v = line_integral(contour, [&](ComplexValue s) {
    return std::exp(s * s - s * lx + log_v2_ratio(s, t, T)) / s;
  }, &tail);
  double r = real_line_value(contour, v, tail, "kernel_V2");
  return contour.abscissa < 0 ? r + 1 : r;
}

double kernel_V(double x, const ContourSpec& contour) {
  if (!(x > 0)) throw DomainError("kernel_V: x must be > 0");
  validate_contour(contour, {0.0});
  const double ly = std::log(4 * kPi * kPi * x);
  double tail = 0;
  ComplexValue v = line_integral(contour, [&](ComplexValue s) { return std::exp(s * s - s * ly) / s; }, &tail);
  double r = real_line_value(contour, v, tail, "kernel_V");
  return contour.abscissa < 0 ? r + 1 : r;
}

ComplexValue log_kernel_G(ComplexValue s, Sign sign, Kind kind, double T) {
  ComplexValue shift = kind == Kind::tau ? ComplexValue(0) : ComplexValue(0, 2 * T);
  for (ComplexValue z : {s - shift, s + shift}) {
    double k = std::round(-z.real());
    if (k >= 0 && std::abs(z + k) < 0.05) throw PoleError("kernel_G: s within 0.05 of a Gamma pole");
  }
  ComplexValue r = std::log(2.0) - 2.0 * s * std::log(2 * kPi) + log_gamma_complex(s - shift) +
                   log_gamma_complex(s + shift);
  if (sign == Sign::minus) r += log_cos_pi(s);
  if (sign == Sign::plus && kind == Kind::tau_shifted) r += log_cosh(2 * kPi * T);
  return r;
}

ComplexValue kernel_G(ComplexValue s, Sign sign, Kind kind, double T) {
  ComplexValue l = log_kernel_G(s, sign, kind, T);
  if (l.real() < -745) return 0;
  return std::exp(l);
}

ComplexValue dirichlet_F(ComplexValue s1, ComplexValue s2, double T) {
  ComplexValue it(0, 2 * T);
  return zeta_complex(1.0 + s1 + s2 + it) * zeta_complex(1.0 + s1 + s2 - it) * zeta_complex(1.0 - s1 + s2 + it) *
         zeta_complex(1.0 - s1 + s2 - it) / zeta_complex(2.0 + 2.0 * s2);
}

DirichletPartial dirichlet_F_brute(double s1, double s2, double T, std::int64_t bound) {
  if (bound < 100) throw DomainError("dirichlet_F_brute: bound must be >= 100");
  if (!(s2 > s1 && s1 > 0)) throw DomainError("dirichlet_F_brute: need s2 > s1 > 0");
  const double w = 1 + 2 * s1;  // k and c exponent
  const double u = 1 - s1 + s2; // m exponent
  const std::int64_t B = bound;

  // P(x) = sum_{e <= x} mu(e) e^{-w}
  std::vector<int> mu(B + 1, 1);
  {
    std::vector<bool> composite(B + 1, false);
    for (std::int64_t p = 2; p <= B; ++p) {
      if (composite[p]) continue;
      for (std::int64_t q = p; q <= B; q += p) {
        if (q > p) composite[q] = true;
        mu[q] = -mu[q];
      }
      for (std::int64_t q = p * p; q <= B; q += p * p) mu[q] = 0;
    }
  }
  std::vector<double> P(B + 1, 0.0);
  for (std::int64_t e = 1; e <= B; ++e) P[e] = P[e - 1] + mu[e] * std::pow(static_cast<double>(e), -w);

  // sum_{c <= B} r_c(m) c^{-w} = sum_{d | m, d <= B} d^{1-w} P(B / d)
  std::vector<double> cum(B + 1, 0.0);
  double running = 0;
  for (std::int64_t m = 1; m <= B; ++m) {
    double A = 0;
    for (std::int64_t d : arith::divisors(m)) A += std::pow(static_cast<double>(d), 1 - w) * P[B / d];
    running += arith::tau_shifted(m, T).real() * A * std::pow(static_cast<double>(m), -u);
    cum[m] = running;
  }

  double ksum = 0;
  for (std::int64_t k = B; k >= 1; --k) ksum += std::pow(static_cast<double>(k), -w);
  // Euler-Maclaurin tail of sum_{k > B} k^{-w}
  const double b = static_cast<double>(B);
  double ktail = std::pow(b, 1 - w) / (w - 1) - 0.5 * std::pow(b, -w) + w / 12 * std::pow(b, -w - 1) -
                 w * (w + 1) * (w + 2) / 720 * std::pow(b, -w - 3);

  // S(M) ~ S_inf + M^{-(s2-s1)} (a cos(2T log M) + b sin(2T log M)) on M in [B/5, B]
  const std::int64_t m0 = B / 5;
  const int rows = static_cast<int>(B - m0 + 1);
  Eigen::MatrixXd A(rows, 3);
  Eigen::VectorXd y(rows);
  for (int i = 0; i < rows; ++i) {
    double M = static_cast<double>(m0 + i);
    double decay = std::pow(M, -(s2 - s1));
    A(i, 0) = 1;
    A(i, 1) = decay * std::cos(2 * T * std::log(M));
    A(i, 2) = decay * std::sin(2 * T * std::log(M));
    y(i) = cum[m0 + i];
  }
  Eigen::VectorXd coef = A.colPivHouseholderQr().solve(y);

  DirichletPartial r;
  r.bound = B;
  r.partial = ksum * cum[B];
  r.extrapolated = (ksum + ktail) * coef(0);
  return r;
}

double mainterm_asymptotic(double T, bool unit_zeta) {
  if (!(T > 2)) throw DomainError("mainterm_asymptotic: T must be > 2");
  double z = unit_zeta ? 1.0 : std::abs(zeta_complex(ComplexValue(1, 2 * T)));
  double l = std::log(T);
  return 3 / (2 * kPi * kPi * kPi) * std::pow(z, 4) * l * l;
}

MainTermValues mainterm_residue_numeric(double T, const MainTermContours& contours) {
  const ContourSpec& c1 = contours.s1;
  const ContourSpec& c2 = contours.s2;
  if (!(T > 2)) throw DomainError("mainterm_residue_numeric: T must be > 2");
  if (!(c1.abscissa > 0 && c2.abscissa > c1.abscissa))
    throw ContourError("mainterm_residue_numeric: need sigma2 > sigma1 > 0");
  validate_contour(c1, {0.0});
  validate_contour(c2, {0.0, c1.abscissa});
  if (c1.step != c2.step || c1.half_height != c2.half_height)
    throw ContourError("mainterm_residue_numeric: both lines must share step and half_height");

  const int n = static_cast<int>(std::ceil(c1.half_height / c1.step));
  const double h = c1.half_height / n;
  const int len = 2 * n + 1;
  const double dh = 1e-4;
  const ComplexValue it(0, 2 * T);

  // u = s1 + s2 and v = s2 - s1 both lie on grids of 2 len - 1 points
  auto u_at = [&](int k) { return ComplexValue(c1.abscissa + c2.abscissa, (k - 2 * n) * h); };
  auto v_at = [&](int k) { return ComplexValue(c2.abscissa - c1.abscissa, (k - 2 * n) * h); };
  const int wide = 2 * len - 1;
  std::vector<ComplexValue> fu(wide), fv(wide), fu_p(wide), fu_m(wide), fv_p(wide), fv_m(wide);
  auto pair = [&](ComplexValue z) { return zeta_complex(1.0 + z + it) * zeta_complex(1.0 + z - it); };
  for (int k = 0; k < wide; ++k) {
    fu[k] = pair(u_at(k));
    fv[k] = pair(v_at(k));
    fu_p[k] = pair(u_at(k) + dh);
    fu_m[k] = pair(u_at(k) - dh);
    fv_p[k] = pair(v_at(k) + dh);
    fv_m[k] = pair(v_at(k) - dh);
  }

  const double lT = std::log(T);
  std::vector<ComplexValue> a1(len), b2(len), z2(len), z2p(len), z2m(len);
  for (int j = 0; j < len; ++j) {
    ComplexValue s1(c1.abscissa, (j - n) * h);
    ComplexValue s2(c2.abscissa, (j - n) * h);
    a1[j] = std::exp(s1 * s1) / s1;
    ComplexValue beta = std::exp(0.5 * std::log(kPi) - std::log(2.0) + log_gamma_complex(s2 + 0.5) -
                                 log_gamma_complex(s2 + 1.0));
    b2[j] = std::exp(s2 * s2 - 2.0 * s2 * std::log(kPi) + 2.0 * s2 * lT) * zeta_complex(1.0 + 2.0 * s2) * beta / s2;
    z2[j] = zeta_complex(2.0 + 2.0 * s2);
    z2p[j] = zeta_complex(2.0 + 2.0 * (s2 + dh));
    z2m[j] = zeta_complex(2.0 + 2.0 * (s2 - dh));
  }

  ComplexValue m1 = 0, m2 = 0;
  double edge = 0;
  for (int b = 0; b < len; ++b) {
    ComplexValue r1 = 0, r2 = 0;
    for (int a = 0; a < len; ++a) {
      int ku = a + b, kv = b - a + len - 1;
      ComplexValue F = fu[ku] * fv[kv] / z2[b];
      ComplexValue dF = (fu_p[ku] * fv_p[kv] / z2p[b] - fu_m[ku] * fv_m[kv] / z2m[b]) / (2 * dh);
      r1 += a1[a] * F;
      r2 += a1[a] * dF;
      if (a == 0 || a == len - 1 || b == 0 || b == len - 1) edge = std::max(edge, std::abs(a1[a] * F * b2[b]));
    }
    m1 += r1 * b2[b];
    m2 += r2 * b2[b];
  }
  const double scale = h * h / (4 * kPi * kPi);
  m1 *= scale * lT / (kPi * kPi);
  m2 *= scale / (2 * kPi * kPi);

  MainTermValues r;
  r.tail = edge * len * scale / c1.half_height;
  if (r.tail > 1e-8 * std::max(1.0, std::abs(m1)))
    throw ContourError("mainterm_residue_numeric: tail estimate " + std::to_string(r.tail));
  r.M1 = m1.real();
  r.M2 = m2.real();
  return r;
}

ComplexValue zeta_log_derivative_line(double T, double h) {
  ComplexValue s(1, 2 * T);
  ComplexValue d = (zeta_complex(s + ComplexValue(0, h)) - zeta_complex(s - ComplexValue(0, h))) /
                   ComplexValue(0, 2 * h);
  return d / zeta_complex(s);
}

double zeta_log_derivative_diag(double T) {
  if (!(T > 2)) throw DomainError("zeta_log_derivative_diag: T must be > 2");
  return std::abs(zeta_log_derivative_line(T));
}

}  // namespace rwc::mainterm
