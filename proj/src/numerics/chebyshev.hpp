#pragma once

#include <functional>
#include <vector>

#include "common.hpp"

namespace microlift {

// Interpolant on [lo,hi] through first-kind Chebyshev points (endpoints never sampled).
class ChebPanel {
 public:
  ChebPanel() = default;
  ChebPanel(double lo, double hi, int n, const std::function<cplx(double)>& f);

  static std::vector<double> nodes(double lo, double hi, int n);
  static ChebPanel from_values(double lo, double hi, std::vector<cplx> values);

  cplx operator()(double x) const;
  // k-th derivative at x, from the Chebyshev series.
  cplx derivative(double x, int k) const;
  // coefficients of the interpolant in powers of (x - lo) / (hi - lo)
  std::vector<cplx> monomial() const;
  // max of the two trailing coefficients relative to the largest one
  double tail() const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t size() const { return values_.size(); }

 private:
  void build_coefficients();
  double lo_ = 0.0, hi_ = 1.0;
  std::vector<cplx> values_;
  std::vector<cplx> coeffs_;
  std::vector<double> x_;
  std::vector<double> bw_;
};

}  // namespace microlift
