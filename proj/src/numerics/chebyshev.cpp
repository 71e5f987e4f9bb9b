#include "numerics/chebyshev.hpp"

#include <algorithm>
#include <cmath>

namespace microlift {

std::vector<double> ChebPanel::nodes(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) {
    double t = std::cos((2.0 * j + 1.0) * kPi / (2.0 * n));
    x[j] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
  }
  return x;
}

ChebPanel ChebPanel::from_values(double lo, double hi, std::vector<cplx> values) {
  ChebPanel p;
  p.lo_ = lo;
  p.hi_ = hi;
  p.values_ = std::move(values);
  p.build_coefficients();
  return p;
}

ChebPanel::ChebPanel(double lo, double hi, int n, const std::function<cplx(double)>& f) : lo_(lo), hi_(hi) {
  for (double x : nodes(lo, hi, n)) values_.push_back(f(x));
  build_coefficients();
}

void ChebPanel::build_coefficients() {
  const int n = static_cast<int>(values_.size());
  x_.resize(n);
  bw_.resize(n);
  coeffs_.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double th = (2.0 * j + 1.0) * kPi / (2.0 * n);
    x_[j] = std::cos(th);
    bw_[j] = (j % 2 == 0 ? 1.0 : -1.0) * std::sin(th);
  }
  for (int k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) s += values_[j] * std::cos(k * (2.0 * j + 1.0) * kPi / (2.0 * n));
    coeffs_[k] = s * (2.0 / n);
  }
  coeffs_[0] *= 0.5;
}

cplx ChebPanel::operator()(double x) const {
  double t = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  cplx num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < x_.size(); ++j) {
    double d = t - x_[j];
    if (d == 0.0) return values_[j];
    double w = bw_[j] / d;
    num += w * values_[j];
    den += w;
  }
  return num / den;
}

cplx ChebPanel::derivative(double x, int k) const {
  std::vector<cplx> c = coeffs_;
  const double scale = 2.0 / (hi_ - lo_);
  for (int d = 0; d < k; ++d) {
    const int n = static_cast<int>(c.size());
    if (n <= 1) return 0.0;
    std::vector<cplx> dc(n - 1, 0.0);
    for (int j = n - 2; j >= 0; --j) {
      cplx next = j + 2 < n - 1 ? dc[j + 2] : cplx(0.0);
      dc[j] = next + 2.0 * (j + 1.0) * c[j + 1];
    }
    dc[0] *= 0.5;
    for (auto& v : dc) v *= scale;
    c = std::move(dc);
  }
  double t = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  cplx b1 = 0.0, b2 = 0.0;
  for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) {
    cplx b0 = 2.0 * t * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}

std::vector<cplx> ChebPanel::monomial() const {
  const std::size_t n = coeffs_.size();
  std::vector<cplx> out(n, 0.0);
  if (n == 0) return out;
  // shifted polynomials T_k(2s - 1) in powers of s
  std::vector<double> prev(n, 0.0), cur(n, 0.0);
  prev[0] = 1.0;
  out[0] += coeffs_[0];
  if (n == 1) return out;
  cur[0] = -1.0;
  cur[1] = 2.0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t j = 0; j <= k; ++j) out[j] += coeffs_[k] * cur[j];
    if (k + 1 == n) break;
    std::vector<double> next(n, 0.0);
    for (std::size_t j = 0; j <= k; ++j) {
      next[j] += -2.0 * cur[j] - prev[j];
      next[j + 1] += 4.0 * cur[j];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

double ChebPanel::tail() const {
  double big = 0.0;
  for (const auto& c : coeffs_) big = std::max(big, std::abs(c));
  if (big == 0.0) return 0.0;
  const std::size_t n = coeffs_.size();
  double t = std::abs(coeffs_[n - 1]);
  if (n > 1) t = std::max(t, std::abs(coeffs_[n - 2]));
  return t / big;
}

}  // namespace microlift
