#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "rwc/types.hpp"

namespace rwc::eisenstein {

struct Point {
  double x = 0;
  double y = 1;
};

inline constexpr double kHeightFloor = 0.05;

// b_1(y), ..., b_{n_max}(y) of the real form e^{i theta} E(z, 1/2 + iT).
struct FourierRow {
  double y = 0;
  std::vector<double> b;
};

// ceil((|T| + 12 |T|^{1/3} + 20) / (2 pi y))
int default_n_max(double T, double y);

ComplexValue scattering_phi(double T);

class EisensteinEvaluator {
 public:
  explicit EisensteinEvaluator(double T);

  double T() const { return T_; }
  ComplexValue phi() const { return phi_; }
  // theta = arg xi(1 + 2iT); E = e^{-i theta} * (real form)
  double theta() const { return theta_; }
  // log(e^{pi |T| / 2} |xi(1 + 2iT)|)
  double log_xi_scaled_abs() const { return log_xi_scaled_; }

  FourierRow compute_row(double y, int n_max) const;
  std::shared_ptr<const FourierRow> row(double y) const;
  void precompute(const std::vector<double>& ys, unsigned threads) const;
  std::size_t cached_rows() const;

  // 2 sqrt(y) cos(theta + T log y)
  double constant_term(double y) const;
  double real_form(double x, const FourierRow& row) const;
  ComplexValue eval(Point z) const;

 private:
  double T_;
  ComplexValue phi_;
  double theta_;
  double log_xi_scaled_;
  mutable std::shared_mutex mutex_;
  mutable std::map<double, std::shared_ptr<const FourierRow>> cache_;
};

std::vector<double> fourier_row(const EisensteinEvaluator& ev, double y, int n_max);
ComplexValue eval_E(const EisensteinEvaluator& ev, Point z);

}  // namespace rwc::eisenstein
