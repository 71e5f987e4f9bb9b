#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "common.hpp"
#include "numerics/quadrature.hpp"

namespace microlift::detail {

// sin of an angle in (0, pi) given together with its supplement, using the smaller one
inline double sin_pair(double x, double xc) { return x < 0.5 * kPi ? std::sin(x) : std::sin(xc); }

inline cplx pos_pow(double base, cplx e) {
  if (e.imag() == 0.0) return std::pow(base, e.real());
  return std::exp(e * std::log(base));
}

// Ratio-2 panels on a unit span, measured from the singular end; panel k covers
// [2^{-k-1}, 2^{-k}]. Any prefix of panels plus a tail node forms a rule.
class GradedPanels {
 public:
  GradedPanels() = default;
  GradedPanels(cplx exponent, int max_depth, int order, double log_freq, double lin_freq) : exponent_(exponent) {
    double hi = 1.0;
    for (int k = 0; k < max_depth; ++k) {
      double lo = 0.5 * hi;
      double phase = log_freq * std::log(2.0) + lin_freq * (hi - lo);
      const GaussRule& g = gauss_legendre(order + static_cast<int>(std::ceil(phase * 12.0 / kTwoPi)));
      std::vector<std::pair<double, double>> p;
      for (std::size_t i = 0; i < g.x.size(); ++i)
        p.push_back({0.5 * (lo + hi) + 0.5 * (hi - lo) * g.x[i], 0.5 * (hi - lo) * g.w[i]});
      panels_.push_back(std::move(p));
      hi = lo;
    }
  }

  int max_depth() const { return static_cast<int>(panels_.size()); }

  // depth needed on a span h when another singular point sits at distance d beyond the end
  int depth_for(int base, double h, double d) const {
    int extra = d > 0.0 && d < h ? static_cast<int>(std::ceil(std::log2(h / d))) : 0;
    return std::min(max_depth(), base + extra);
  }

  // f(s, weight) over offsets s in (0, h]
  template <class F>
  std::int64_t visit(double h, int depth, F&& f, bool tail = true) const {
    std::int64_t n = 0;
    for (int k = 0; k < depth; ++k)
      for (const auto& [s, w] : panels_[static_cast<std::size_t>(k)]) {
        f(h * s, cplx(h * w));
        ++n;
      }
    if (!tail) return n;
    double eps = h * std::ldexp(1.0, -depth);
    cplx den = exponent_ + 1.0;
    f(eps, std::abs(den) > 1e-12 ? eps / den : cplx(eps));
    return n + 1;
  }

 private:
  cplx exponent_ = 0.0;
  std::vector<std::vector<std::pair<double, double>>> panels_;
};

// int_0^eps u^c (P + Q u^q) du with P, Q fitted to f1 = f(eps), f2 = f(eps/2);
// q near 0 switches to P + Q log u.
inline cplx two_term_tail(double eps, cplx c, cplx q, cplx f1, cplx f2) {
  cplx c1 = c + 1.0;
  cplx den = 1.0 - std::pow(2.0, -q);
  if (std::abs(q) < 1e-9 || std::abs(den) < 1e-9) {
    cplx Q = (f1 - f2) / std::log(2.0), P = f1 - Q * std::log(eps);
    return std::pow(eps, c1) * ((Q * std::log(eps) + P) / c1 - Q / (c1 * c1));
  }
  cplx eq = std::pow(eps, q);
  cplx Q = (f1 - f2) / (eq * den), P = f1 - Q * eq;
  return Q * std::pow(eps, c1 + q) / (c1 + q) + P * std::pow(eps, c1) / c1;
}

}  // namespace microlift::detail
