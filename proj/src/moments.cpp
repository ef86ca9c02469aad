#include "rwc/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "rwc/errors.hpp"
#include "rwc/parallel.hpp"
#include "rwc/quadrature.hpp"
#include "rwc/specfun.hpp"

namespace rwc::moments {
namespace {

using eisenstein::default_n_max;

constexpr double kArcDepth = 1.0 - 0.86602540378443864676372317075293618;  // 1 - sqrt(3)/2

int x_count_for(double T, double y, double refine) {
  int n = 4 * default_n_max(T, y) + 16;
  n = static_cast<int>(std::ceil(n * std::max(1.0, refine)));
  return n + (n % 2);
}

}  // namespace

QuadratureGrid build_grid(double T, double Y, int k, const GridOptions& options) {
  if (!(Y > 1)) throw DomainError("build_grid: Y must be > 1");
  if (k != 1 && k != 2) throw DomainError("build_grid: k must be 1 or 2");
  if (!(options.refine > 0)) throw DomainError("build_grid: refine must be > 0");
  const double a = std::abs(T);
  const auto& gk = quad::gauss_kronrod21();
  const auto& gl = quad::gauss_legendre<20>();
  QuadratureGrid grid;
  grid.T = T;
  grid.Y = Y;
  grid.k = k;
  int panel = 0;

  // arc region: y = 1 - d u^2, u in [0, 1]
  const int arc_panels = static_cast<int>(std::ceil(options.refine * (0.2 * k * a + 2)));
  for (int p = 0; p < arc_panels; ++p, ++panel) {
    double u0 = static_cast<double>(p) / arc_panels;
    double u1 = static_cast<double>(p + 1) / arc_panels;
    double mid = 0.5 * (u0 + u1), half = 0.5 * (u1 - u0);
    for (std::size_t i = 0; i < gk.x.size(); ++i) {
      double u = mid + half * gk.x[i];
      double y = 1 - kArcDepth * u * u;
      double jac = 2 * kArcDepth * u * half / (y * y);
      QuadratureRow row;
      row.y = y;
      row.weight = gk.wk[i] * jac;
      row.gauss_weight = gk.wg[i] * jac;
      row.panel = panel;
      row.arc = true;
      double lo = std::sqrt(std::max(0.0, 1 - y * y));
      double len = 0.5 - lo;
      int xp = static_cast<int>(std::ceil(options.refine * k * default_n_max(T, y) * len / 1.5)) + 1;
      for (int q = 0; q < xp; ++q) {
        double a0 = lo + len * q / xp;
        double hx = 0.5 * len / xp;
        for (std::size_t j = 0; j < gl.x.size(); ++j) {
          row.xs.push_back(a0 + hx * (1 + gl.x[j]));
          row.xw.push_back(2 * hx * gl.w[j]);
        }
      }
      row.x_count = static_cast<int>(row.xs.size());
      grid.rows.push_back(std::move(row));
    }
  }

  // rectangle: log-spaced panels in L = log y on [0, log Y]
  const double LY = std::log(Y);
  const double width = std::min(0.25, 3.0 / (2 * k * a + 2)) / options.refine;
  const int rect_panels = std::max(1, static_cast<int>(std::ceil(LY / width)));
  for (int p = 0; p < rect_panels; ++p, ++panel) {
    double l0 = LY * p / rect_panels;
    double l1 = LY * (p + 1) / rect_panels;
    double mid = 0.5 * (l0 + l1), half = 0.5 * (l1 - l0);
    for (std::size_t i = 0; i < gk.x.size(); ++i) {
      double y = std::exp(mid + half * gk.x[i]);
      QuadratureRow row;
      row.y = y;
      row.weight = gk.wk[i] * half / y;
      row.gauss_weight = gk.wg[i] * half / y;
      row.panel = panel;
      row.x_count = x_count_for(T, y, options.refine);
      grid.rows.push_back(std::move(row));
    }
  }
  grid.panels = panel;
  return grid;
}

MomentEstimate integrate_moment(const eisenstein::EisensteinEvaluator& ev, const QuadratureGrid& grid, int k,
                                unsigned threads) {
  if (k != 1 && k != 2) throw DomainError("integrate_moment: k must be 1 or 2");
  std::vector<double> ys;
  ys.reserve(grid.rows.size());
  for (const auto& r : grid.rows) ys.push_back(r.y);
  ev.precompute(ys, threads);

  std::vector<double> values(grid.rows.size());
  parallel_for(grid.rows.size(), threads, [&](std::size_t i) {
    const QuadratureRow& row = grid.rows[i];
    auto coeffs = ev.row(row.y);
    double acc = 0;
    if (row.arc) {
      for (std::size_t j = 0; j < row.xs.size(); ++j) {
        double r = ev.real_form(row.xs[j], *coeffs);
        double r2 = r * r;
        acc += row.xw[j] * (k == 1 ? r2 : r2 * r2);
      }
    } else {
      const int n = row.x_count;
      for (int j = 0; j < n; ++j) {
        double r = ev.real_form(static_cast<double>(j) / n - 0.5, *coeffs);
        double r2 = r * r;
        acc += k == 1 ? r2 : r2 * r2;
      }
      acc /= n;
    }
    values[i] = acc;
  });

  MomentEstimate est;
  std::vector<double> kron(grid.panels, 0.0), gauss(grid.panels, 0.0);
  for (std::size_t i = 0; i < grid.rows.size(); ++i) {
    kron[grid.rows[i].panel] += grid.rows[i].weight * values[i];
    gauss[grid.rows[i].panel] += grid.rows[i].gauss_weight * values[i];
  }
  for (int p = 0; p < grid.panels; ++p) {
    est.value += kron[p];
    est.error += std::abs(kron[p] - gauss[p]);
  }
  return est;
}

double truncated_moment(const eisenstein::EisensteinEvaluator& ev, const QuadratureGrid& grid, int k,
                        unsigned threads, double tolerance) {
  for (const auto& row : grid.rows) {
    if (!row.arc && row.x_count < 4 * default_n_max(ev.T(), row.y) + 16)
      throw ResolutionError("x-rule below 4 n_max + 16 at y = " + std::to_string(row.y));
  }
  MomentEstimate est = integrate_moment(ev, grid, k, threads);
  if (!(est.error <= tolerance * std::abs(est.value)))
    throw ResolutionError("quadrature error estimate " + std::to_string(est.error / std::abs(est.value)) +
                          " above tolerance");
  return est.value;
}

double regularization_correction(ComplexValue phi, double T, double Y, int k,
                                 const CorrectionCoefficients& c) {
  if (!(Y > 1)) throw DomainError("regularization_correction: Y must be > 1");
  const double LY = std::log(Y);
  ComplexValue w = std::exp(ComplexValue(0, -2 * T * LY));  // Y^{-2iT}
  if (k == 1) return 2 * LY + (phi * w / ComplexValue(0, -T)).real();
  if (k == 2) {
    return c.c0 * Y + c.c1 * (phi * Y * w / ComplexValue(1, -2 * T)).real() +
           c.c2 * (phi * phi * Y * w * w / ComplexValue(1, -4 * T)).real();
  }
  throw DomainError("regularization_correction: k must be 1 or 2");
}

double regularization_correction(double T, double Y, int k) {
  return regularization_correction(eisenstein::scattering_phi(T), T, Y, k);
}

double leading_law(double T, int k) {
  if (k == 2) {
    double l = std::log(std::abs(T));
    return 72 / kPi * l * l;
  }
  if (k == 1) {
    ComplexValue s(1, 2 * T);
    ComplexValue d = -0.5 * std::log(kPi) + 0.5 * specfun::digamma_complex(0.5 * s) + specfun::zeta_log_derivative(s);
    return 4 * d.real();
  }
  throw DomainError("leading_law: k must be 1 or 2");
}

MomentResult regularized_moment(double T, double Y, int k, const MomentOptions& options) {
  MomentResult r;
  r.T = T;
  r.Y = Y;
  r.k = k;
  eisenstein::EisensteinEvaluator ev(T);
  QuadratureGrid grid = build_grid(T, Y, k, options.grid);
  for (const auto& row : grid.rows) {
    if (!row.arc && row.x_count < 4 * default_n_max(T, row.y) + 16)
      throw ResolutionError("x-rule below 4 n_max + 16");
  }
  MomentEstimate est = integrate_moment(ev, grid, k, options.threads);
  r.raw = est.value;
  r.error_estimate = est.error;
  if (!(est.error <= options.tolerance * std::abs(est.value)))
    throw ResolutionError("quadrature error estimate " + std::to_string(est.error / std::abs(est.value)) +
                          " above tolerance");
  r.correction = regularization_correction(ev.phi(), T, Y, k, options.coefficients);
  r.regularized = r.raw - r.correction;
  r.ratio = r.regularized / leading_law(T, k);
  return r;
}

SlopeFit second_moment_slope(double T, double Y0, double Y1, int samples, const MomentOptions& options) {
  if (!(Y0 > 1 && Y1 > Y0)) throw DomainError("second_moment_slope: need 1 < Y0 < Y1");
  if (samples < 5) throw DomainError("second_moment_slope: need at least 5 samples");
  eisenstein::EisensteinEvaluator ev(T);
  Eigen::MatrixXd A(samples, 4);
  Eigen::VectorXd b(samples);
  for (int i = 0; i < samples; ++i) {
    double L = std::log(Y0) + (std::log(Y1) - std::log(Y0)) * i / (samples - 1);
    QuadratureGrid grid = build_grid(T, std::exp(L), 1, options.grid);
    b(i) = truncated_moment(ev, grid, 1, options.threads, options.tolerance);
    A(i, 0) = L;
    A(i, 1) = 1;
    A(i, 2) = std::cos(2 * T * L);
    A(i, 3) = std::sin(2 * T * L);
  }
  Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  SlopeFit fit;
  fit.slope = c(0);
  fit.intercept = c(1);
  fit.endpoint_slope = (b(samples - 1) - b(0)) / (A(samples - 1, 0) - A(0, 0));
  return fit;
}

std::vector<MomentResult> rwc_scan(const std::vector<double>& Ts, double Y, int k, const MomentOptions& options) {
  if (Ts.empty()) throw DomainError("rwc_scan: empty T list");
  std::vector<MomentResult> out(Ts.size());
  const unsigned outer = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(Ts.size())));
  MomentOptions inner = options;
  inner.threads = std::max(1u, options.threads / outer);
  parallel_for(Ts.size(), outer, [&](std::size_t i) {
    try {
      out[i] = regularized_moment(Ts[i], Y, k, inner);
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      out[i] = MomentResult{Ts[i], Y, k, nan, nan, nan, nan, nan, e.what()};
    }
  });
  return out;
}

}  // namespace rwc::moments
