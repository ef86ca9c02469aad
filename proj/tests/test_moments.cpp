#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "rwc/errors.hpp"
#include "rwc/moments.hpp"

using namespace rwc;
using namespace rwc::moments;

namespace {

double five_point(double T, double Y, int k) {
  const double h = 1e-3;
  auto A = [&](double y) { return regularization_correction(T, y, k); };
  return (A(Y - 2 * h) - 8 * A(Y - h) + 8 * A(Y + h) - A(Y + 2 * h)) / (12 * h);
}

double spread(const std::vector<double>& v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / std::abs(v.front());
}

}  // namespace

TEST_CASE("grid layout") {
  for (double T : {4.0, 12.0, 30.0}) {
    QuadratureGrid g = build_grid(T, 10, 2);
    double area = 0;
    for (const auto& r : g.rows) {
      CHECK(r.weight > 0);
      CHECK(r.y >= std::sqrt(3.0) / 2 - 1e-15);
      CHECK(r.y <= 10);
      if (r.arc) {
        CHECK(r.y < 1);
        double lo = std::sqrt(1 - r.y * r.y);
        double w = 0;
        for (std::size_t j = 0; j < r.xs.size(); ++j) {
          CHECK(r.xs[j] >= lo);
          CHECK(r.xs[j] <= 0.5);
          CHECK(r.xw[j] > 0);
          w += r.xw[j];
        }
        area += r.weight * w;
      } else {
        CHECK(r.x_count % 2 == 0);
        CHECK(r.x_count >= 4 * eisenstein::default_n_max(T, r.y) + 16);
        area += r.weight;
      }
    }
    CHECK(std::abs(area - (kPi / 3 - 0.1)) < 1e-13);
  }
  CHECK_THROWS_AS(build_grid(10, 1, 2), DomainError);
  CHECK_THROWS_AS(build_grid(10, 5, 3), DomainError);
}

TEST_CASE("second moment: self-convergence under doubled resolution") {
  eisenstein::EisensteinEvaluator ev(10);
  double a = truncated_moment(ev, build_grid(10, 10, 1), 1);
  double b = truncated_moment(ev, build_grid(10, 10, 1, {2.0}), 1);
  CHECK(a > 0);
  CHECK(std::abs(a - b) < 1e-6 * a);
}

TEST_CASE("second moment: monotone in Y") {
  eisenstein::EisensteinEvaluator ev(10);
  double prev = 0;
  for (double Y : {1.5, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    double v = truncated_moment(ev, build_grid(10, Y, 1), 1);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("second moment: log-slope over Y in [20, 40]") {
  SlopeFit fit = second_moment_slope(10, 20, 40);
  INFO("slope=" << fit.slope << " endpoint=" << fit.endpoint_slope);
  CHECK(fit.slope >= 1.96);
  CHECK(fit.slope <= 2.04);
}

TEST_CASE("correction: antiderivative property") {
  const double T = 8, Y = 10;
  ComplexValue phi = eisenstein::scattering_phi(T);
  double fd = five_point(T, Y, 2);
  ComplexValue w = std::exp(ComplexValue(0, -2 * T * std::log(Y)));
  double exact = 6 + 8 * (phi * w).real() + 2 * (phi * phi * w * w).real();
  CHECK(std::abs(fd - exact) < 1e-8);

  // k = 1: derivative times Y is the x-averaged |c(y)|^2 / y
  CHECK(std::abs(five_point(T, Y, 1) * Y - (2 + 2 * (phi * w).real())) < 1e-8);
  CHECK_THROWS_AS(regularization_correction(T, 1.0, 2), DomainError);
}

TEST_CASE("correction: oscillatory part of A_1 decays like 1/T") {
  for (double T : {100.0, 1000.0}) {
    double d = regularization_correction(T, 30, 1) - regularization_correction(T, 10, 1);
    CHECK(std::abs(d - 2 * std::log(3.0)) <= 2 / T + 1e-12);
  }
}

TEST_CASE("correction: binomial coefficients") {
  CorrectionCoefficients c;
  CHECK(c.c0 == 6);
  CHECK(c.c1 == 2 * 4);
  CHECK(c.c2 == 2 * 1);
  // x-average of |1 + w|^4 over |w| = 1 with w = e^{it}: 6 + 8 cos t + 2 cos 2t
  for (double t : {0.0, 0.7, 2.1, 3.0}) {
    double direct = std::pow(std::abs(1.0 + std::exp(ComplexValue(0, t))), 4);
    CHECK(std::abs(direct - (6 + 8 * std::cos(t) + 2 * std::cos(2 * t))) < 1e-13);
  }
}

TEST_CASE("regularized second moment equals the Maass-Selberg value") {
  for (double Y : {8.0, 20.0}) {
    MomentResult r = regularized_moment(10, Y, 1);
    CHECK(r.raw > 0);
    CHECK(std::abs(r.ratio - 1) < 1e-8);
  }
}

TEST_CASE("Y-independence at T = 12") {
  std::vector<double> r2, r4;
  for (double Y : {8.0, 12.0, 16.0, 24.0}) {
    r2.push_back(regularized_moment(12, Y, 1).regularized);
    r4.push_back(regularized_moment(12, Y, 2).regularized);
  }
  CHECK(spread(r2) <= 0.01);
  CHECK(spread(r4) <= 0.02);
  CHECK(spread(r4) < 1e-7);
}

TEST_CASE("fourth moment: refinement stability and positivity") {
  MomentResult a = regularized_moment(16, 12, 2);
  MomentOptions fine;
  fine.grid.refine = 2;
  MomentResult b = regularized_moment(16, 12, 2, fine);
  CHECK(std::abs(a.regularized - b.regularized) < 0.005 * std::abs(a.regularized));
  for (double T : {8.0, 24.0, 32.0}) {
    MomentResult r = regularized_moment(T, 12, 2);
    INFO("T=" << T);
    CHECK(r.raw > 0);
    CHECK(r.regularized > 0);
    CHECK(std::isfinite(r.ratio));
  }
}

TEST_CASE("resolution errors") {
  eisenstein::EisensteinEvaluator ev(10);
  QuadratureGrid g = build_grid(10, 10, 1);
  for (auto& r : g.rows)
    if (!r.arc) r.x_count = 8;
  CHECK_THROWS_AS(truncated_moment(ev, g, 1), ResolutionError);
  CHECK_THROWS_AS(truncated_moment(ev, build_grid(10, 10, 1, {0.05}), 2, 1, 1e-15), ResolutionError);
}

TEST_CASE("scan") {
  MomentOptions o;
  o.threads = 2;
  std::vector<MomentResult> a = rwc_scan({6, 9, 12}, 8, 2, o);
  std::vector<MomentResult> b = rwc_scan({12, 6, 9}, 8, 2, o);
  REQUIRE(a.size() == 3);
  CHECK(a[0].regularized == b[1].regularized);
  CHECK(a[1].regularized == b[2].regularized);
  CHECK(a[2].regularized == b[0].regularized);
  CHECK(a[0].T == 6);

  MomentResult single = regularized_moment(9, 8, 2);
  CHECK(rwc_scan({9}, 8, 2)[0].regularized == single.regularized);

  std::vector<MomentResult> c = rwc_scan({6, 0, 9}, 8, 2);
  CHECK(c[0].error.empty());
  CHECK_FALSE(c[1].error.empty());
  CHECK(std::isnan(c[1].regularized));
  CHECK(c[2].regularized == single.regularized);
  CHECK_THROWS_AS(rwc_scan({}, 8, 2), DomainError);
}
