#include <algorithm>
#include <cmath>
#include <string>

#include "rwc/arith.hpp"
#include "rwc/errors.hpp"
#include "rwc/mainterm.hpp"
#include "rwc/parallel.hpp"
#include "rwc/specfun.hpp"

namespace rwc::mainterm {
namespace {

constexpr double kTauCap = 8192;
constexpr double kMellinFloor = 1e-15;

// Trapezoid nodes in t = log u over the support of phi; spectrally accurate
// for |Im s| well below pi / (node spacing).
struct LogNodes {
  std::vector<double> t;
  std::vector<double> f;  // phi(e^t)
  double h = 0;
};

LogNodes log_nodes(const BumpFunction& phi, double tau_max) {
  if (!(phi.lo() > 0)) throw DomainError("Mellin transform needs a bump supported on u > 0");
  const double t0 = std::log(phi.lo()), t1 = std::log(phi.hi());
  const int n = static_cast<int>(std::ceil((t1 - t0) * (tau_max + 1000) / kPi)) + 64;
  LogNodes r;
  r.h = (t1 - t0) / n;
  for (int j = 1; j < n; ++j) {
    double t = t0 + j * r.h;
    r.t.push_back(t);
    r.f.push_back(phi(std::exp(t)));
  }
  return r;
}

ComplexValue mellin_from_nodes(const LogNodes& nodes, ComplexValue s) {
  ComplexValue sum = 0;
  for (std::size_t j = 0; j < nodes.t.size(); ++j) sum += nodes.f[j] * std::exp(-s * nodes.t[j]);
  return sum * nodes.h;
}

// Coefficients a_j = G(s_j) Phi~(-s_j) on s_j = sigma + i j h, j >= 0,
// truncated where Phi~ has decayed below kMellinFloor of its peak.
struct DualKernel {
  double sigma = 0;
  double h = 0;
  std::vector<double> tau;
  std::vector<ComplexValue> plus, minus;
};

DualKernel dual_kernel(Kind kind, double T, const BumpFunction& phi, const VoronoiOptions& o) {
  DualKernel k;
  k.sigma = o.sigma;
  k.h = o.step;
  const LogNodes nodes = log_nodes(phi, kTauCap);
  const double block = 32;
  double peak = 0, block_max = 0, block_end = block;
  int quiet_blocks = 0;
  const std::size_t cap = static_cast<std::size_t>(kTauCap / o.step);
  // rotation recurrence for e^{-i tau t_j}
  std::vector<ComplexValue> rot(nodes.t.size()), step(nodes.t.size());
  for (std::size_t j = 0; j < nodes.t.size(); ++j) {
    rot[j] = nodes.f[j] * std::exp(-o.sigma * nodes.t[j]);
    step[j] = std::polar(1.0, -o.step * nodes.t[j]);
  }
  for (std::size_t i = 0;; ++i) {
    if (i >= cap) throw ContourError("dual transform: Mellin transform did not decay below tau = 8192");
    double tau = i * o.step;
    if (i % 256 == 0)
      for (std::size_t j = 0; j < nodes.t.size(); ++j)
        rot[j] = nodes.f[j] * std::exp(-o.sigma * nodes.t[j]) * std::polar(1.0, -tau * nodes.t[j]);
    ComplexValue m = 0;
    for (std::size_t j = 0; j < nodes.t.size(); ++j) {
      m += rot[j];
      rot[j] *= step[j];
    }
    m *= nodes.h;
    ComplexValue s(o.sigma, tau);
    double w = i == 0 ? 0.5 : 1.0;
    k.tau.push_back(tau);
    k.plus.push_back(w * kernel_G(s, Sign::plus, kind, T) * m);
    k.minus.push_back(w * kernel_G(s, Sign::minus, kind, T) * m);
    peak = std::max(peak, std::abs(m));
    block_max = std::max(block_max, std::abs(m));
    if (tau >= block_end) {
      quiet_blocks = block_max < kMellinFloor * peak ? quiet_blocks + 1 : 0;
      if (quiet_blocks >= 2) break;
      block_max = 0;
      block_end += block;
    }
  }
  return k;
}

// (1/2 pi i) int G(s) Phi~(-s) x^{-s} ds for both signs
std::pair<double, double> dual_transform(const DualKernel& k, double x) {
  const double L = std::log(x);
  const ComplexValue step = std::polar(1.0, -k.h * L);
  ComplexValue z = 1, sp = 0, sm = 0;
  for (std::size_t j = 0; j < k.tau.size(); ++j) {
    if (j % 256 == 0) z = std::polar(1.0, -k.tau[j] * L);
    sp += k.plus[j] * z;
    sm += k.minus[j] * z;
    z *= step;
  }
  const double f = std::exp(-k.sigma * L) * k.h / kPi;
  return {f * sp.real(), f * sm.real()};
}

ComplexValue coefficient(Kind kind, std::int64_t n, double T) {
  if (kind == Kind::tau) return static_cast<double>(arith::divisor_count(n));
  return arith::tau_shifted(n, T);
}

}  // namespace

ComplexValue mellin_bump(const BumpFunction& phi, ComplexValue s) {
  return mellin_from_nodes(log_nodes(phi, std::abs(s.imag())), s);
}

double voronoi_transform(Kind kind, Sign sign, double T, const BumpFunction& phi, double x,
                         const VoronoiOptions& options) {
  if (!(x > 0)) throw DomainError("voronoi_transform: x must be > 0");
  DualKernel k = dual_kernel(kind, T, phi, options);
  auto v = dual_transform(k, x);
  return sign == Sign::plus ? v.first : v.second;
}

VoronoiCheck voronoi_identity_check(Kind kind, std::int64_t h, std::int64_t c, double scale, double T,
                                    const BumpFunction& phi, const VoronoiOptions& options) {
  if (c < 1) throw DomainError("voronoi_identity_check: c must be >= 1");
  if (arith::gcd(h, c) != 1) throw DomainError("voronoi_identity_check: gcd(h, c) must be 1");
  if (!(scale > 0)) throw DomainError("voronoi_identity_check: scale must be > 0");
  if (kind == Kind::tau_shifted && !(T > 0)) throw DomainError("voronoi_identity_check: T must be > 0");
  if (!(options.sigma > 0)) throw ContourError("voronoi_identity_check: sigma must be > 0");
  const std::int64_t hbar = c == 1 ? 0 : arith::modinv(h, c);
  const double cd = static_cast<double>(c);
  VoronoiCheck r;

  // direct side
  const auto n0 = static_cast<std::int64_t>(std::floor(phi.lo() * scale));
  const auto n1 = static_cast<std::int64_t>(std::ceil(phi.hi() * scale));
  for (std::int64_t n = std::max<std::int64_t>(1, n0); n <= n1; ++n) {
    double w = phi(n / scale);
    if (w == 0) continue;
    std::int64_t twist = kind == Kind::tau ? n * hbar : n * h;
    r.lhs += coefficient(kind, n, T) * arith::unit_root(twist, c) * (w / n);
  }

  // main term
  const LogNodes nodes = log_nodes(phi, 4 * T);
  if (kind == Kind::tau) {
    double base = std::log(scale / (cd * cd)) + 2 * kEulerGamma, acc = 0;
    for (std::size_t j = 0; j < nodes.t.size(); ++j) acc += (base + nodes.t[j]) * nodes.f[j];
    r.main = acc * nodes.h / cd;
  } else {
    for (double e : {1.0, -1.0}) {
      ComplexValue w(0, 2 * T * e);
      ComplexValue zeta = specfun::zeta_complex(1.0 + 2.0 * w);
      ComplexValue factor = zeta * std::exp(-(1.0 + 2.0 * w) * std::log(cd) + w * std::log(scale));
      r.main += factor * mellin_from_nodes(nodes, -w);
    }
  }

  // dual side
  const DualKernel k = dual_kernel(kind, T, phi, options);
  r.contour_height = k.tau.back();
  const std::int64_t twist = kind == Kind::tau ? h : hbar;
  const double tol = options.tail_tolerance * (1 + std::abs(r.main));
  const std::int64_t chunk = 64;
  int quiet = 0;
  std::int64_t next = 1;
  std::vector<ComplexValue> terms(chunk);
  while (quiet < options.tail_run) {
    if (next > options.max_terms)
      throw ConvergenceError("voronoi_identity_check: dual sum not converged after " +
                             std::to_string(options.max_terms) + " terms");
    const std::int64_t base = next;
    parallel_for(static_cast<std::size_t>(chunk), options.threads, [&](std::size_t i) {
      std::int64_t b = base + static_cast<std::int64_t>(i);
      auto v = dual_transform(k, scale * b / (cd * cd));
      terms[i] = coefficient(kind, b, T) *
                 (arith::unit_root(b * twist, c) * v.first + arith::unit_root(-b * twist, c) * v.second) / cd;
    });
    for (std::int64_t i = 0; i < chunk && quiet < options.tail_run; ++i) {
      r.dual += terms[i];
      r.dual_terms = base + i;
      quiet = std::abs(terms[i]) < tol ? quiet + 1 : 0;
    }
    next = base + chunk;
  }

  r.rhs = r.main + r.dual;
  r.gap = std::abs(r.lhs - r.rhs) / (std::abs(r.lhs) + 1e-30);
  return r;
}

}  // namespace rwc::mainterm
