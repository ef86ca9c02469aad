#include "rwc/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "rwc/arith.hpp"
#include "rwc/errors.hpp"
#include "rwc/parallel.hpp"
#include "rwc/specfun.hpp"

namespace rwc::eisenstein {

int default_n_max(double T, double y) {
  double a = std::abs(T);
  return static_cast<int>(std::ceil((a + 12 * std::cbrt(a) + 20) / (2 * kPi * y)));
}

ComplexValue scattering_phi(double T) {
  if (!(std::abs(T) > 0)) throw PoleError("scattering_phi: T = 0");
  return std::exp(specfun::log_xi_complete(ComplexValue(0, 2 * T)) -
                  specfun::log_xi_complete(ComplexValue(1, 2 * T)));
}

EisensteinEvaluator::EisensteinEvaluator(double T) : T_(T) {
  if (!std::isfinite(T) || T == 0) throw DomainError("EisensteinEvaluator: T must be finite and nonzero");
  phi_ = scattering_phi(T);
  ComplexValue lx = specfun::log_xi_complete(ComplexValue(1, 2 * T));
  theta_ = std::remainder(lx.imag(), 2 * kPi);
  log_xi_scaled_ = lx.real() + 0.5 * kPi * std::abs(T);
}

FourierRow EisensteinEvaluator::compute_row(double y, int n_max) const {
  if (!(y >= kHeightFloor)) throw DomainError("fourier_row: y below floor " + std::to_string(kHeightFloor));
  const double a = std::abs(T_);
  if (2 * kPi * n_max * y <= a + 12 * std::cbrt(a))
    throw TruncationError("fourier_row: n_max = " + std::to_string(n_max) + " too small at y = " + std::to_string(y));
  FourierRow row;
  row.y = y;
  row.b.resize(static_cast<std::size_t>(n_max));
  const double pre = 4 * std::sqrt(y) * std::exp(-log_xi_scaled_);
  for (int n = 1; n <= n_max; ++n) {
    // tau_T(n) = sum_{ab=n} (a/b)^{iT}
    double tau = arith::tau_shifted(n, 0.5 * T_).real();
    double k = specfun::bessel_k_imag_scaled(T_, 2 * kPi * n * y).value;
    row.b[n - 1] = pre * tau * k;
  }
  return row;
}

std::shared_ptr<const FourierRow> EisensteinEvaluator::row(double y) const {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(y);
    if (it != cache_.end()) return it->second;
  }
  auto fresh = std::make_shared<const FourierRow>(compute_row(y, default_n_max(T_, y)));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = cache_.emplace(y, fresh);
  return it->second;
}

void EisensteinEvaluator::precompute(const std::vector<double>& ys, unsigned threads) const {
  std::vector<double> missing;
  {
    std::shared_lock lock(mutex_);
    for (double y : ys)
      if (!cache_.count(y)) missing.push_back(y);
  }
  std::sort(missing.begin(), missing.end());
  missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
  std::vector<std::shared_ptr<const FourierRow>> rows(missing.size());
  parallel_for(missing.size(), threads, [&](std::size_t i) {
    rows[i] = std::make_shared<const FourierRow>(compute_row(missing[i], default_n_max(T_, missing[i])));
  });
  std::unique_lock lock(mutex_);
  for (std::size_t i = 0; i < missing.size(); ++i) cache_.emplace(missing[i], rows[i]);
}

std::size_t EisensteinEvaluator::cached_rows() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

double EisensteinEvaluator::constant_term(double y) const {
  return 2 * std::sqrt(y) * std::cos(theta_ + T_ * std::log(y));
}

double EisensteinEvaluator::real_form(double x, const FourierRow& row) const {
  double xr = x - std::round(x);
  double sum = 0;
  ComplexValue step;
  ComplexValue rot;
  const std::size_t n = row.b.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k % 32 == 0) {
      double ang = 2 * kPi * static_cast<double>(k + 1) * xr;
      rot = ComplexValue(std::cos(ang), std::sin(ang));
      double a1 = 2 * kPi * xr;
      step = ComplexValue(std::cos(a1), std::sin(a1));
    } else {
      rot *= step;
    }
    sum += row.b[k] * rot.real();
  }
  return constant_term(row.y) + sum;
}

ComplexValue EisensteinEvaluator::eval(Point z) const {
  if (!(z.y >= kHeightFloor)) throw DomainError("eval_E: y below floor " + std::to_string(kHeightFloor));
  auto r = row(z.y);
  double v = real_form(z.x, *r);
  return ComplexValue(std::cos(theta_), -std::sin(theta_)) * v;
}

std::vector<double> fourier_row(const EisensteinEvaluator& ev, double y, int n_max) {
  return ev.compute_row(y, n_max).b;
}

ComplexValue eval_E(const EisensteinEvaluator& ev, Point z) { return ev.eval(z); }

}  // namespace rwc::eisenstein
