#pragma once

#include <string>
#include <vector>

#include "rwc/eisenstein.hpp"
#include "rwc/types.hpp"

namespace rwc::moments {

struct GridOptions {
  double refine = 1.0;  // multiplies every panel and node count
};

// One y-node of the truncated fundamental domain. Rows with y >= 1 use the
// equispaced periodic x-rule on [-1/2, 1/2); rows below y = 1 integrate the
// two arcs |x| in [sqrt(1 - y^2), 1/2] with composite Gauss-Legendre nodes.
struct QuadratureRow {
  double y = 0;
  double weight = 0;        // Kronrod weight, Jacobian and 1/y^2 included
  double gauss_weight = 0;  // embedded Gauss weight; 0 on Kronrod-only nodes
  int panel = 0;
  bool arc = false;
  int x_count = 0;
  std::vector<double> xs;  // arc rows
  std::vector<double> xw;  // arc rows; weights cover both arcs
};

struct QuadratureGrid {
  double T = 0;
  double Y = 0;
  int k = 2;
  std::vector<QuadratureRow> rows;
  int panels = 0;
};

QuadratureGrid build_grid(double T, double Y, int k, const GridOptions& options = {});

struct MomentEstimate {
  double value = 0;
  double error = 0;  // sum over panels of |Kronrod - Gauss|
};

MomentEstimate integrate_moment(const eisenstein::EisensteinEvaluator& ev, const QuadratureGrid& grid, int k,
                                unsigned threads = 1);

// Throws ResolutionError when the grid does not resolve T or the estimate
// misses the relative tolerance.
double truncated_moment(const eisenstein::EisensteinEvaluator& ev, const QuadratureGrid& grid, int k,
                        unsigned threads = 1, double tolerance = 1e-6);

struct CorrectionCoefficients {
  double c0 = 6;
  double c1 = 8;
  double c2 = 2;
};

double regularization_correction(double T, double Y, int k);
double regularization_correction(ComplexValue phi, double T, double Y, int k,
                                 const CorrectionCoefficients& coefficients = {});

// k = 2: (72/pi) log^2 T. k = 1: -phi'/phi(1/2 + iT) = 4 Re xi'/xi(1 + 2iT).
double leading_law(double T, int k);

struct MomentResult {
  double T = 0;
  double Y = 0;
  int k = 2;
  double raw = 0;
  double correction = 0;
  double regularized = 0;
  double ratio = 0;
  double error_estimate = 0;
  std::string error;  // non-empty when the computation failed
};

struct MomentOptions {
  GridOptions grid;
  unsigned threads = 1;
  double tolerance = 1e-6;
  CorrectionCoefficients coefficients;
};

MomentResult regularized_moment(double T, double Y, int k, const MomentOptions& options = {});

// Least-squares fit of I_2(T; Y) against {log Y, 1, cos(2T log Y), sin(2T log Y)}
// over `samples` log-spaced heights in [Y0, Y1].
struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double endpoint_slope = 0;  // plain (I(Y1) - I(Y0)) / log(Y1 / Y0)
};

SlopeFit second_moment_slope(double T, double Y0, double Y1, int samples = 11, const MomentOptions& options = {});

std::vector<MomentResult> rwc_scan(const std::vector<double>& Ts, double Y, int k,
                                   const MomentOptions& options = {});

}  // namespace rwc::moments
