#pragma once

#include <cstdint>
#include <vector>

#include "rwc/types.hpp"

namespace rwc::arith {

struct KloostermanArgs {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t c = 1;
};

std::int64_t gcd(std::int64_t a, std::int64_t b);
// Inverse of h modulo c; requires gcd(h, c) = 1.
std::int64_t modinv(std::int64_t h, std::int64_t c);

std::vector<std::int64_t> divisors(std::int64_t n);
std::int64_t divisor_count(std::int64_t n);
int mobius(std::int64_t n);

ComplexValue sigma_complex(std::int64_t n, ComplexValue w);

// tau(m, 2T) = sum_{ab=m} (a/b)^{2iT}
ComplexValue tau_shifted(std::int64_t m, double T);
// The same number as sigma_{4iT}(m) / m^{2iT}.
ComplexValue tau_shifted_sigma(std::int64_t m, double T);

// Moebius/gcd closed form sum_{d | (c, m)} mu(c/d) d.
std::int64_t ramanujan_sum(std::int64_t c, std::int64_t m);
// Direct sum of e(m h / c) over units h mod c, rounded.
std::int64_t ramanujan_sum_direct(std::int64_t c, std::int64_t m);

// S(n, m, c) = sum_{h mod c, (h,c)=1} e((n h + m hbar) / c)
ComplexValue kloosterman(const KloostermanArgs& args);

// e(r / c) with r reduced exactly modulo c.
ComplexValue unit_root(std::int64_t r, std::int64_t c);

}  // namespace rwc::arith
