#pragma once

#include <cstdint>
#include <vector>

#include "rwc/types.hpp"

namespace rwc::mainterm {

struct ContourSpec {
  double abscissa = 0.5;
  double half_height = 10;
  double step = 1.0 / 64;
};

// Throws ContourError unless half_height >= 8, step > 0 and the abscissa
// stays 0.05 away from every listed pole abscissa.
void validate_contour(const ContourSpec& c, const std::vector<double>& pole_abscissae);

// C-infinity bump: rises on [lo, lo + rise], equals 1 on [lo + rise, hi - rise],
// falls on [hi - rise, hi], vanishes outside (lo, hi).
class BumpFunction {
 public:
  BumpFunction(double lo, double hi, double rise);
  double operator()(double x) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double rise() const { return rise_; }

 private:
  double lo_, hi_, rise_;
};

double smooth_step(double v);

struct WeightH {
  double value = 0;
  bool underflow = false;
};

WeightH weight_H(double t, double T);
double weight_H_leading(double t, double T);  // 8 pi / (|t| (4T^2 - t^2)^{1/2})

// Even; support eps < |x| < 1 - eps; equal to 1 on 2 eps <= |x| <= 1 - 2 eps.
double smooth_cutoff_Z(double x, double eps_param);
double weight_Q(double t, double T, double eps_param = 0.1);

enum class Parity { even, odd };

double kernel_V1(double x, double t, Parity parity, const ContourSpec& contour = {});
double kernel_V2(double x, double t, double T, const ContourSpec& contour = {});
double kernel_V(double x, const ContourSpec& contour = {});

enum class Sign { plus, minus };
enum class Kind { tau, tau_shifted };

ComplexValue log_kernel_G(ComplexValue s, Sign sign, Kind kind, double T);
ComplexValue kernel_G(ComplexValue s, Sign sign, Kind kind, double T);

// Mellin transform int_0^inf Phi(u) u^{-s-1} du of a bump, by the trapezoid rule in log u.
ComplexValue mellin_bump(const BumpFunction& phi, ComplexValue s);

struct VoronoiCheck {
  ComplexValue lhs;
  ComplexValue rhs;
  ComplexValue main;
  ComplexValue dual;
  double gap = 0;
  std::int64_t dual_terms = 0;
  double contour_height = 0;
};

struct VoronoiOptions {
  double sigma = 0.5;
  double step = 1.0 / 16;
  double tail_tolerance = 1e-12;
  int tail_run = 50;
  std::int64_t max_terms = 100000;
  unsigned threads = 1;
};

// Lhs: sum_n a(n)/n e(n hbar/c) Phi(n/N) with a = tau (resp. e(m h/c), a = tau(m, 2T)).
// Rhs: main term plus the dual sum, whose transforms are vertical-line integrals of
// kernel_G times the Mellin transform of Phi.
VoronoiCheck voronoi_identity_check(Kind kind, std::int64_t h, std::int64_t c, double scale, double T,
                                    const BumpFunction& test_function, const VoronoiOptions& options = {});

// Integral transform of the dual sum at a single point, for testing.
double voronoi_transform(Kind kind, Sign sign, double T, const BumpFunction& phi, double x,
                         const VoronoiOptions& options = {});

ComplexValue dirichlet_F(ComplexValue s1, ComplexValue s2, double T);

struct DirichletPartial {
  ComplexValue partial;       // m, k, c <= bound
  ComplexValue extrapolated;  // k-tail by Euler-Maclaurin, m-tail by least squares
  std::int64_t bound = 0;
};

// Brute-force sum_{m,k,c} tau(m,2T) r_c(m) / (k^{1+2s1} c^{1+2s1} m^{1-s1+s2}).
DirichletPartial dirichlet_F_brute(double s1, double s2, double T, std::int64_t bound = 2000);

double mainterm_asymptotic(double T, bool unit_zeta = false);

struct MainTermContours {
  ContourSpec s1{0.3, 10, 1.0 / 64};
  ContourSpec s2{0.8, 10, 1.0 / 64};
};

struct MainTermValues {
  double M1 = 0;
  double M2 = 0;
  double tail = 0;
};

MainTermValues mainterm_residue_numeric(double T, const MainTermContours& contours = {});

ComplexValue zeta_log_derivative_line(double T, double h = 1e-4);
double zeta_log_derivative_diag(double T);

}  // namespace rwc::mainterm
