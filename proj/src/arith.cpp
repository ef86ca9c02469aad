#include "rwc/arith.hpp"

#include <cmath>
#include <string>

#include "rwc/errors.hpp"

namespace rwc::arith {

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t modinv(std::int64_t h, std::int64_t c) {
  if (c < 1) throw DomainError("modinv: modulus must be >= 1");
  if (c == 1) return 0;
  std::int64_t a = ((h % c) + c) % c;
  std::int64_t old_r = a, r = c, old_s = 1, s = 0;
  while (r) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw DomainError("modinv: " + std::to_string(h) + " not invertible mod " + std::to_string(c));
  return ((old_s % c) + c) % c;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw DomainError("divisors: n must be >= 1");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::int64_t divisor_count(std::int64_t n) { return static_cast<std::int64_t>(divisors(n).size()); }

int mobius(std::int64_t n) {
  if (n < 1) throw DomainError("mobius: n must be >= 1");
  int mu = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

ComplexValue sigma_complex(std::int64_t n, ComplexValue w) {
  if (n < 1) throw DomainError("sigma_complex: n must be >= 1");
  ComplexValue sum = 0;
  for (std::int64_t d : divisors(n)) sum += std::exp(w * std::log(static_cast<double>(d)));
  return sum;
}

ComplexValue tau_shifted(std::int64_t m, double T) {
  if (m < 1) throw DomainError("tau_shifted: m must be >= 1");
  const double lm = std::log(static_cast<double>(m));
  ComplexValue sum = 0;
  for (std::int64_t a : divisors(m)) {
    double ph = 2 * T * (2 * std::log(static_cast<double>(a)) - lm);
    sum += ComplexValue(std::cos(ph), std::sin(ph));
  }
  return sum;
}

ComplexValue tau_shifted_sigma(std::int64_t m, double T) {
  if (m < 1) throw DomainError("tau_shifted: m must be >= 1");
  ComplexValue s = sigma_complex(m, ComplexValue(0, 4 * T));
  double ph = -2 * T * std::log(static_cast<double>(m));
  return s * ComplexValue(std::cos(ph), std::sin(ph));
}

std::int64_t ramanujan_sum(std::int64_t c, std::int64_t m) {
  if (c < 1) throw DomainError("ramanujan_sum: c must be >= 1");
  std::int64_t g = gcd(c, m);
  if (m == 0) g = c;
  std::int64_t sum = 0;
  for (std::int64_t d : divisors(g)) sum += mobius(c / d) * d;
  return sum;
}

ComplexValue unit_root(std::int64_t r, std::int64_t c) {
  std::int64_t red = r % c;
  if (red < 0) red += c;
  // fold to [-c/2, c/2] so the angle stays small
  if (2 * red > c) red -= c;
  double ang = 2 * kPi * static_cast<double>(red) / static_cast<double>(c);
  return {std::cos(ang), std::sin(ang)};
}

std::int64_t ramanujan_sum_direct(std::int64_t c, std::int64_t m) {
  if (c < 1) throw DomainError("ramanujan_sum: c must be >= 1");
  double sum = 0;
  for (std::int64_t h = 1; h <= c; ++h) {
    if (gcd(h, c) != 1) continue;
    std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(m) * h) % c);
    sum += unit_root(r, c).real();
  }
  double rounded = std::round(sum);
  if (std::abs(sum - rounded) > 1e-6) throw InvariantError("ramanujan_sum_direct: non-integral sum");
  return static_cast<std::int64_t>(rounded);
}

ComplexValue kloosterman(const KloostermanArgs& args) {
  const std::int64_t c = args.c;
  if (c < 1) throw DomainError("kloosterman: c must be >= 1");
  const std::int64_t n = args.n % c;
  const std::int64_t m = args.m % c;
  ComplexValue sum = 0;
  for (std::int64_t h = 1; h <= c; ++h) {
    if (gcd(h, c) != 1) continue;
    std::int64_t hb = modinv(h, c);
    __int128 r = static_cast<__int128>(n) * h + static_cast<__int128>(m) * hb;
    sum += unit_root(static_cast<std::int64_t>(r % c), c);
  }
  return sum;
}

}  // namespace rwc::arith
