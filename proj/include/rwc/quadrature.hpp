#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rwc::quad {

// Nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

template <unsigned N>
const Rule& gauss_legendre() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, N>;
    Rule r;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] == 0.0) continue;
      r.x.push_back(-a[i]);
      r.w.push_back(w[i]);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.x.push_back(a[i]);
      r.w.push_back(w[i]);
    }
    // sort ascending
    std::vector<std::size_t> idx(r.x.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t p, std::size_t q) { return r.x[p] < r.x[q]; });
    Rule s;
    for (auto i : idx) {
      s.x.push_back(r.x[i]);
      s.w.push_back(r.w[i]);
    }
    return s;
  }();
  return rule;
}

// 21-point Kronrod extension of the 10-point Gauss rule; gauss weight is zero
// on the Kronrod-only nodes.
struct KronrodRule {
  std::vector<double> x;
  std::vector<double> wk;
  std::vector<double> wg;
};

const KronrodRule& gauss_kronrod21();

template <class F>
auto gk21_panel(F&& f, double a, double b, double* err) {
  const KronrodRule& r = gauss_kronrod21();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  using R = decltype(f(mid));
  R k{};
  R g{};
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    R v = f(mid + half * r.x[i]);
    k += r.wk[i] * v;
    g += r.wg[i] * v;
  }
  k *= half;
  g *= half;
  if (err) *err = std::abs(k - g);
  return k;
}

// Globally adaptive Gauss-Kronrod with bisection of the worst panel.
template <class F>
auto adaptive(F&& f, double a, double b, double abs_tol, double rel_tol,
              std::size_t max_panels = 4000, double* err_out = nullptr) {
  using R = decltype(f(a));
  struct Panel {
    double a, b, err;
    R value;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  std::priority_queue<Panel> heap;
  double e0 = 0;
  R v0 = gk21_panel(f, a, b, &e0);
  heap.push({a, b, e0, v0});
  R total = v0;
  double err = e0;
  while (heap.size() < max_panels) {
    if (err <= std::max(abs_tol, rel_tol * std::abs(total))) break;
    Panel p = heap.top();
    heap.pop();
    double m = 0.5 * (p.a + p.b);
    double el = 0, er = 0;
    R vl = gk21_panel(f, p.a, m, &el);
    R vr = gk21_panel(f, m, p.b, &er);
    total += vl + vr - p.value;
    err += el + er - p.err;
    heap.push({p.a, m, el, vl});
    heap.push({m, p.b, er, vr});
  }
  // re-sum to shed accumulated rounding of the running updates
  R sum{};
  double esum = 0;
  std::vector<Panel> panels;
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
  for (const auto& p : panels) {
    sum += p.value;
    esum += p.err;
  }
  if (err_out) *err_out = esum;
  return sum;
}

}  // namespace rwc::quad
