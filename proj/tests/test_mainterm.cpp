#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <random>

#include "rwc/errors.hpp"
#include "rwc/mainterm.hpp"
#include "rwc/quadrature.hpp"
#include "rwc/specfun.hpp"

using namespace rwc;
using namespace rwc::mainterm;

namespace {

double v_closed(double x) { return 0.5 * std::erfc(std::log(4 * kPi * kPi * x) / 2); }

}  // namespace

TEST_CASE("weight H") {
  for (double t : {1.0, 10.0, 39.0, 79.0}) CHECK(weight_H(t, 40).value > 0);
  double r = weight_H(40, 40).value / weight_H_leading(40, 40);
  CHECK(r >= 0.98);
  CHECK(r <= 1.02);
  CHECK(weight_H(80 + std::pow(40.0, 0.6), 40).value / weight_H(40, 40).value < 1e-8);
  CHECK(weight_H(170, 40).underflow);
  CHECK(weight_H(170, 40).value == 0);
  CHECK(weight_H(-13, 20).value == weight_H(13, 20).value);
}

TEST_CASE("smooth cutoff Z and Q") {
  CHECK(smooth_cutoff_Z(0.5, 0.1) == 1);
  CHECK(smooth_cutoff_Z(0, 0.1) == 0);
  CHECK(smooth_cutoff_Z(1, 0.1) == 0);
  CHECK(smooth_cutoff_Z(0.2, 0.1) == 1);
  CHECK(smooth_cutoff_Z(0.8, 0.1) == 1);
  CHECK(smooth_cutoff_Z(0.1, 0.1) == 0);
  CHECK(smooth_cutoff_Z(0.15, 0.1) > 0);
  CHECK(smooth_cutoff_Z(0.15, 0.1) < 1);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> xd(-1.2, 1.2);
  for (int i = 0; i < 20; ++i) {
    double x = xd(rng);
    CHECK(smooth_cutoff_Z(x, 0.07) == smooth_cutoff_Z(-x, 0.07));
  }
  // sampled derivatives stay finite and scale like 1/eps
  double worst = 0;
  for (int i = 1; i < 2000; ++i) {
    double x = i / 2000.0, h = 1e-6;
    worst = std::max(worst, std::abs(smooth_cutoff_Z(x + h, 0.05) - smooth_cutoff_Z(x - h, 0.05)) / (2 * h));
  }
  CHECK(std::isfinite(worst));
  CHECK(worst < 4 / 0.05);
  CHECK_THROWS_AS(smooth_cutoff_Z(0.5, 0.25), DomainError);

  const double T = 30;
  CHECK(std::abs(weight_Q(T, T) - 1 / (std::sqrt(3.0) * T * T)) < 1e-18);
  CHECK(weight_Q(-17, T) == weight_Q(17, T));
  CHECK(weight_Q(2 * T, T) == 0);
  CHECK(weight_Q(70, T) == 0);
}

TEST_CASE("H times the bulk cutoff") {
  double c20 = 0, c40 = 0;
  for (double T : {20.0, 40.0}) {
    double best = 0;
    for (int i = 1; i < 4000; ++i) {
      double t = 2 * T * i / 4000.0;
      best = std::max(best, weight_H(t, T).value * smooth_cutoff_Z(t / (2 * T), 0.1));
    }
    (T == 20 ? c20 : c40) = best * std::pow(T, 2 - 0.1);
  }
  CHECK(c20 <= 100);
  CHECK(c40 <= 100);
  CHECK(c40 <= c20);
}

TEST_CASE("kernel V against its closed form") {
  for (double x : {1e-10, 1e-4, 0.003, 0.02, 0.1, 1.0, 30.0}) CHECK(std::abs(kernel_V(x) - v_closed(x)) < 1e-12);
  CHECK(std::abs(kernel_V(1e-10) - 1) < 1e-5);
  CHECK(kernel_V(1e4) < 1e-6);
  const double natural = 1 / (4 * kPi * kPi);
  CHECK(kernel_V(1e-6 * natural) >= 0.999);
  CHECK(std::abs(kernel_V(1e3 * natural)) < 1e-6);
  CHECK(std::abs(kernel_V(0.05, {0.5, 10, 1.0 / 64}) - kernel_V(0.05, {1.5, 10, 1.0 / 64})) < 1e-6);
  CHECK(std::abs(kernel_V(0.05, {0.5, 10, 1.0 / 64}) - kernel_V(0.05, {-0.7, 10, 1.0 / 64})) < 1e-6);
}

TEST_CASE("contour validation") {
  CHECK_THROWS_AS(kernel_V(0.1, {0.02, 10, 1.0 / 64}), ContourError);
  CHECK_THROWS_AS(kernel_V(0.1, {0.5, 6, 1.0 / 64}), ContourError);
  CHECK_THROWS_AS(kernel_V1(0.1, 20, Parity::even, {-0.48, 10, 1.0 / 64}), ContourError);
  CHECK_THROWS_AS(kernel_V(-1), DomainError);
}

TEST_CASE("kernel V1") {
  double a = kernel_V1(1e-8, 20, Parity::even);
  double b = kernel_V1(1e-8, 20, Parity::even, {-0.25, 10, 1.0 / 64});
  CHECK(std::abs(a - 1) < 1e-4);
  CHECK(std::abs(a - b) < 1e-6);

  // (|t|^2 + 1) / x bound at sigma = 2
  double worst = 0;
  for (double t : {5.0, 20.0, 60.0})
    for (double x : {1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6}) {
      double v = std::abs(kernel_V1(x, t, Parity::even));
      worst = std::max(worst, v / std::pow((t * t + 1) / x, 2));
    }
  CHECK(worst < 1);

  // even - odd difference decays at least like 1/|t|
  std::vector<double> d;
  for (double t : {20.0, 40.0, 80.0}) {
    double m = 0;
    for (double f : {0.01, 0.1, 1.0, 3.0}) {
      double x = f * t * t / (4 * kPi * kPi);
      m = std::max(m, std::abs(kernel_V1(x, t, Parity::even) - kernel_V1(x, t, Parity::odd)));
    }
    d.push_back(m);
    CHECK(m <= 1 / t);
  }
  double slope = -(std::log(d[2]) - std::log(d[0])) / std::log(4.0);
  CHECK(slope >= 0.9);

  // plateau and decay relative to the natural scale t^2 / (4 pi^2)
  const double t = 30, natural = t * t / (4 * kPi * kPi);
  double p = kernel_V1(1e-6 * natural, t, Parity::even);
  CHECK(p >= 0.999);
  CHECK(p <= 1.001);
  CHECK(std::abs(kernel_V1(1e3 * natural, t, Parity::even)) < 1e-6);
  CHECK(std::abs(kernel_V1(natural, t, Parity::even, {0.5, 10, 1.0 / 64}) -
                 kernel_V1(natural, t, Parity::even, {1.2, 10, 1.0 / 64})) < 1e-6);
}

TEST_CASE("kernel V2") {
  const double T = 40;
  CHECK(std::abs(kernel_V2(1e-8, T, T) - 1) < 1e-4);
  double worst = 0;
  for (double t : {10.0, 40.0, 70.0})
    for (double x : {1e2, 1e4, 1e5, 1e6, 1e7}) {
      double v = std::abs(kernel_V2(x, t, T));
      worst = std::max(worst, v / std::pow((std::abs(4 * T * T - t * t) + 1) / x, 2));
    }
  CHECK(worst < 1);
  // leading form in the bulk
  for (double t : {20.0, 40.0, 60.0})
    for (double f : {0.1, 0.5, 1.0, 2.0}) {
      double q = 4 * T * T - t * t;
      double x = f * q / (4 * kPi * kPi);
      double lead = kernel_V(x / q);
      INFO("t=" << t << " f=" << f);
      CHECK(std::abs(kernel_V2(x, t, T) - lead) <= 0.05 * lead);
    }
  const double natural = (4 * T * T - T * T) / (4 * kPi * kPi);
  double p = kernel_V2(1e-6 * natural, T, T);
  CHECK(p >= 0.999);
  CHECK(p <= 1.001);
  CHECK(std::abs(kernel_V2(1e3 * natural, T, T)) < 1e-6);
  CHECK_THROWS_AS(kernel_V2(1, 79.5, T), DomainError);
}

TEST_CASE("kernel G") {
  // Stirling bound for G1 at sigma = 2
  for (Sign sg : {Sign::plus, Sign::minus}) {
    double worst = 0;
    for (double tau : {0.0, 1.0, 10.0, 50.0, 200.0}) {
      double g = std::abs(kernel_G({2, tau}, sg, Kind::tau, 0));
      worst = std::max(worst, g / std::pow(1 + tau, 3));
    }
    CHECK(worst < 1);
  }
  CHECK(std::abs(kernel_G({2, 10}, Sign::plus, Kind::tau, 0)) <= std::pow(11.0, 3));

  ComplexValue s(0.1, 0.5);
  ComplexValue r = kernel_G(s, Sign::plus, Kind::tau_shifted, 60) / std::pow(ComplexValue(60 / kPi), 2.0 * s - 1.0);
  CHECK(r.real() >= 0.97);
  CHECK(r.real() <= 1.03);
  CHECK(std::abs(r.imag()) <= 0.03);

  // two-factor bound at sigma = 1, T = 30
  const double T = 30;
  for (Sign sg : {Sign::plus, Sign::minus}) {
    double worst = 0;
    for (double tau : {0.0, 20.0, 59.0, 60.0, 61.0, 100.0, 300.0}) {
      double g = std::abs(kernel_G({1, tau}, sg, Kind::tau_shifted, T));
      double bound = std::sqrt((1 + std::abs(tau - 2 * T)) * (1 + std::abs(tau + 2 * T)));
      worst = std::max(worst, g / bound);
    }
    CHECK(worst < 1);
  }

  // closed form of G1 against direct Gamma evaluation
  ComplexValue z(0.7, 3.2);
  ComplexValue direct = 2.0 * std::pow(2 * kPi, -2.0 * z) * specfun::gamma_complex(z) * specfun::gamma_complex(z) *
                        std::cos(kPi * z);
  CHECK(std::abs(kernel_G(z, Sign::minus, Kind::tau, 0) - direct) < 1e-12 * std::abs(direct));
  CHECK_THROWS_AS(kernel_G({0.01, 0}, Sign::plus, Kind::tau, 0), PoleError);
}

TEST_CASE("Mellin transform of a bump") {
  BumpFunction phi(1, 2, 0.5);
  for (ComplexValue s : {ComplexValue(0.5, 0), ComplexValue(0.5, 7), ComplexValue(-0.3, 40)}) {
    ComplexValue ref = quad::adaptive([&](double u) { return phi(u) * std::exp(-(s + 1.0) * std::log(u)); }, 1.0, 2.0,
                                      1e-15, 1e-13);
    CHECK(std::abs(mellin_bump(phi, s) - ref) < 1e-12);
  }
}

TEST_CASE("dual transforms against Bessel integrals") {
  BumpFunction phi(1, 2, 0.5);
  for (double x : {0.3, 2.0, 11.0}) {
    auto k0 = [&](double u) { return 4 * phi(u) * boost::math::cyl_bessel_k(0, 4 * kPi * std::sqrt(x * u)) / u; };
    auto y0 = [&](double u) { return -2 * kPi * phi(u) * boost::math::cyl_neumann(0, 4 * kPi * std::sqrt(x * u)) / u; };
    double p = quad::adaptive(k0, 1.0, 2.0, 1e-15, 1e-13);
    double m = quad::adaptive(y0, 1.0, 2.0, 1e-15, 1e-13);
    INFO("x=" << x);
    CHECK(std::abs(voronoi_transform(Kind::tau, Sign::plus, 0, phi, x) - p) < 1e-11);
    CHECK(std::abs(voronoi_transform(Kind::tau, Sign::minus, 0, phi, x) - m) < 1e-11);
  }
}

TEST_CASE("Voronoi identities") {
  BumpFunction phi(1, 2, 0.5);
  auto a = voronoi_identity_check(Kind::tau, 1, 1, 50, 0, phi);
  CHECK(a.gap < 1e-6);
  auto b = voronoi_identity_check(Kind::tau, 2, 5, 200, 0, phi);
  CHECK(b.gap < 1e-6);
  auto c = voronoi_identity_check(Kind::tau_shifted, 1, 3, 100, 5, phi);
  CHECK(c.gap < 1e-4);
  // a narrower bump with a plateau
  auto d = voronoi_identity_check(Kind::tau, 4, 9, 120, 0, BumpFunction(1, 3, 0.6));
  CHECK(d.gap < 1e-6);
  CHECK_THROWS_AS(voronoi_identity_check(Kind::tau, 2, 4, 50, 0, phi), DomainError);
  VoronoiOptions tight;
  tight.max_terms = 100;
  CHECK_THROWS_AS(voronoi_identity_check(Kind::tau, 3, 7, 50, 0, phi, tight), ConvergenceError);
}

TEST_CASE("Dirichlet series F") {
  for (double T : {10.0, 20.0}) {
    ComplexValue z = specfun::zeta_complex(ComplexValue(1, 2 * T));
    double ref = std::pow(std::abs(z), 4) / (kPi * kPi / 6);
    CHECK(std::abs(dirichlet_F(0, 0, T) - ref) < 1e-10 * ref);
  }
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> re(-0.4, 0.4), im(-3, 3);
  for (int i = 0; i < 20; ++i) {
    ComplexValue s1(re(rng), im(rng)), s2(re(rng) + 0.6, im(rng));
    ComplexValue a = dirichlet_F(s1, s2, 7), b = dirichlet_F(-s1, s2, 7);
    CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
  }
  DirichletPartial p = dirichlet_F_brute(0.8, 1.4, 3);
  ComplexValue F = dirichlet_F(0.8, 1.4, 3);
  CHECK(std::abs(p.extrapolated - F) < 1e-4);
  // raw partial sums approach F as the bound grows
  DirichletPartial q = dirichlet_F_brute(0.8, 1.4, 3, 500);
  CHECK(std::abs(p.partial - F) < std::abs(q.partial - F));
  CHECK_THROWS_AS(dirichlet_F(ComplexValue(0, 6), 0, 3), PoleError);
}

TEST_CASE("main-term asymptotic") {
  double l = std::log(20.0);
  CHECK(std::abs(mainterm_asymptotic(20, true) - 3 / (2 * std::pow(kPi, 3)) * l * l) < 1e-15);
  CHECK(std::abs(mainterm_asymptotic(400, true) / mainterm_asymptotic(20, true) - 4) < 1e-12);
  double z = std::abs(specfun::zeta_complex(ComplexValue(1, 40)));
  CHECK(std::abs(mainterm_asymptotic(20) - 3 / (2 * std::pow(kPi, 3)) * std::pow(z, 4) * l * l) < 1e-14);
  CHECK_THROWS_AS(mainterm_asymptotic(1.5), DomainError);
}

TEST_CASE("main-term double contour integrals") {
  MainTermValues a = mainterm_residue_numeric(20);
  MainTermContours shifted;
  shifted.s1.abscissa = 0.5;
  MainTermValues b = mainterm_residue_numeric(20, shifted);
  CHECK(std::abs(a.M1 - b.M1) < 1e-6 * std::abs(a.M1));
  CHECK(std::abs(a.M2 - b.M2) < 1e-6 * std::abs(a.M1));
  CHECK(a.M1 > 0);
  for (double T : {20.0, 40.0, 80.0}) {
    MainTermValues m = mainterm_residue_numeric(T);
    double z4 = std::pow(std::abs(specfun::zeta_complex(ComplexValue(1, 2 * T))), 4);
    INFO("T=" << T << " M2=" << m.M2);
    CHECK(std::abs(m.M2) / z4 <= std::pow(std::log(T), 5.0 / 3 + 0.1));
  }
  MainTermContours bad;
  bad.s1.abscissa = 0.9;
  CHECK_THROWS_AS(mainterm_residue_numeric(20, bad), ContourError);
}

TEST_CASE("zeta log-derivative diagnostic") {
  for (double T : {10.0, 100.0, 1000.0}) {
    double d = zeta_log_derivative_diag(T);
    CHECK(std::isfinite(d));
    // derivative of the quartic interpolant of log zeta through five points on the line
    ComplexValue s0(1, 2 * T), z0 = specfun::zeta_complex(s0);
    const double h = 0.02;
    ComplexValue lp = std::log(specfun::zeta_complex(s0 + ComplexValue(0, h)) / z0);
    ComplexValue lm = std::log(specfun::zeta_complex(s0 - ComplexValue(0, h)) / z0);
    ComplexValue lp2 = std::log(specfun::zeta_complex(s0 + ComplexValue(0, 2 * h)) / z0);
    ComplexValue lm2 = std::log(specfun::zeta_complex(s0 - ComplexValue(0, 2 * h)) / z0);
    ComplexValue fit = (lm2 - 8.0 * lm + 8.0 * lp - lp2) / (12 * h) / ComplexValue(0, 1);
    CHECK(std::abs(std::abs(fit) - d) < 0.01 * d);
  }
}
