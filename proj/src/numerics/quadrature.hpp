#pragma once

#include <functional>
#include <vector>

#include "common.hpp"

namespace microlift {

using RealFn = std::function<cplx(double)>;

struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre on [-1,1]; cached, thread safe.
const GaussRule& gauss_legendre(int n);

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  std::int64_t max_nodes = 4'000'000;
};

// Global adaptive G7K15. Throws BudgetExceeded with the best estimate.
QuadValue integrate_adaptive(const RealFn& f, double a, double b, const AdaptiveOptions& opts = {});
// Same, starting from the given sorted breakpoints.
QuadValue integrate_adaptive(const RealFn& f, const std::vector<double>& breaks, const AdaptiveOptions& opts = {});
// Over the whole real line via u = x/(1-x^2).
QuadValue integrate_real_line(const RealFn& f, const AdaptiveOptions& opts = {});

// Node of a composite rule on [0, L]. xr = L - x kept separately so that
// distances to the right end stay exact.
struct GradedNode {
  double x;
  double xr;
  cplx w;
};

struct GradedSpec {
  double length = 1.0;
  bool left_singular = false;
  bool right_singular = false;
  cplx left_exp = 0.0;   // local power behaviour used by the tail node
  cplx right_exp = 0.0;
  int depth = 32;        // ratio-2 panels toward a singular end
  int order = 10;        // base Gauss order per panel
  double log_freq = 0.0; // |Im| of local exponents (oscillation per unit log-length)
  double lin_freq = 0.0; // radians per unit length of the smooth factors
};

std::vector<GradedNode> graded_rule(const GradedSpec& spec);

struct SingularFactor {
  double location;
  cplx exponent;
};

enum class SingularPath { Subtraction, Graded };

struct SingularOptions {
  double tol = 1e-11;
  SingularPath path = SingularPath::Subtraction;
  int graded_m = 200;
  int graded_order = 12;
};

// Integral over [a,b] of cofactor(u) * prod_j |sin(u - u_j)|^{s_j}.
QuadValue integrate_singular(const RealFn& cofactor, const std::vector<SingularFactor>& factors,
                             double a, double b, const SingularOptions& opts = {});

struct CriticalPoint {
  cplx amplitude;
  double p_second;
  double p_value;
};

cplx stationary_phase_leading(const std::vector<CriticalPoint>& points, double t);

}  // namespace microlift
