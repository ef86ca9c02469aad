#include "rwc/quadrature.hpp"

#include <algorithm>

namespace rwc::quad {

const KronrodRule& gauss_kronrod21() {
  static const KronrodRule rule = [] {
    using K = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    const auto& xk = K::abscissa();
    const auto& wk = K::weights();
    const auto& xg = G::abscissa();
    const auto& wg = G::weights();
    auto gauss_weight = [&](double x) {
      for (std::size_t j = 0; j < xg.size(); ++j)
        if (std::abs(xg[j] - x) < 1e-14) return wg[j];
      return 0.0;
    };
    KronrodRule r;
    for (std::size_t i = xk.size(); i-- > 1;) {
      r.x.push_back(-xk[i]);
      r.wk.push_back(wk[i]);
      r.wg.push_back(gauss_weight(xk[i]));
    }
    for (std::size_t i = 0; i < xk.size(); ++i) {
      r.x.push_back(xk[i]);
      r.wk.push_back(wk[i]);
      r.wg.push_back(gauss_weight(xk[i]));
    }
    return r;
  }();
  return rule;
}

}  // namespace rwc::quad
