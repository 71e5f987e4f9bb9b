#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "circle_model/circle_function.hpp"
#include "numerics/quadrature.hpp"

namespace microlift {

struct TripleExponents {
  cplx alpha, beta, gamma;
  static TripleExponents from_lambdas(cplx l1, cplx l2, cplx l3);
  // (alpha-1)/2 on |w(s2,s3)|, (beta-1)/2 on |w(s1,s3)|, (gamma-1)/2 on |w(s1,s2)|
  cplx e23() const { return (alpha - 1.0) / 2.0; }
  cplx e13() const { return (beta - 1.0) / 2.0; }
  cplx e12() const { return (gamma - 1.0) / 2.0; }
  // throws RegularizationRequired when some exponent has Re <= -1
  void check_direct_path() const;
};

using Vec2 = std::array<double, 2>;
cplx kernel_eval_plane(cplx l1, cplx l2, cplx l3, Vec2 s1, Vec2 s2, Vec2 s3);
cplx kernel_eval_circle(cplx l1, cplx l2, cplx l3, double x, double y, double z);

struct SimplexOptions {
  int depth = 26;
  int order = 10;
  bool estimate_error = true;
  double trim_rel = 1e-15;    // Fourier coefficients below this fraction of the peak are dropped
  double resolve_rel = 1e-12; // node density follows frequencies above this fraction
};

// (2pi)^{-3} triple integral of f1(x) f2(y) f3(z) K(x,y,z)
QuadValue l_mod(const CircleFunction& f1, const CircleFunction& f2, const CircleFunction& f3, cplx l1, cplx l2,
                cplx l3, const SimplexOptions& opts = {});

// Integral with a delta (sum of all K-types) in the middle slot, at angle `shift`:
//   pi^{-2} int_0^pi |sin z|^{a_out} w(z+shift) Psi(z) dz,
//   Psi(z) = int_0^pi v(x+shift) |sin x|^{b_x} |sin(x-z)|^{b_xz} dx.
struct DeltaProblem {
  std::function<cplx(double)> x_fn;
  double x_freq = 0.0;  // radians per unit length of x_fn
  std::function<cplx(double)> z_fn;  // empty: constant 1
  double z_freq = 0.0;
  cplx a_out = 0.0, b_xz = 0.0, b_x = 0.0;
  double shift = 0.0;
  std::vector<std::pair<double, double>> z_support;  // subintervals of [0,pi]; empty: all
  bool analytic_psi = false;  // Psi analytic up to z = 0, pi (integer inner exponents)
};

struct DeltaOptions {
  int inner_depth = 36;
  int inner_order = 10;
  int outer_depth = 44;
  int cheb_n = 16;
  double cheb_tol = 1e-10;
  int outer_order = 16;
  // continuation window near z = 0, pi: interpolation nodes and maximal width
  int cont_n = 16;
  double cont_window = 0.5;
};

QuadValue delta_slot_integral(const DeltaProblem& p, const DeltaOptions& opts = {});

// Slot assignment (lambda1, lambda2, lambda3) = (mu, lambda, lambda):
// exponents -lambda+mu/2-1/2 on |sin z| and -mu/2-1/2 on the other two.
QuadValue l_mod_delta(const CircleFunction& v, cplx mu, cplx lambda, const DeltaOptions& opts = {});
// l_mod(v, delta at lambda2, e_0 at lambda3) for a general triple (mu, lambda2, lambda3)
QuadValue l_mod_delta_mixed(const CircleFunction& v, cplx mu, cplx lambda2, cplx lambda3,
                            const DeltaOptions& opts = {});
// Discrete series branch: mu = -k, continued in the outer exponent.
QuadValue l_mod_disc(const CircleFunction& v, int k, cplx lambda, const DeltaOptions& opts = {});
// d/dmu of the same integral at mu = -k, central difference with step h.
QuadValue l_mod_disc_derivative(const CircleFunction& v, int k, cplx lambda, double h = 1e-3,
                                const DeltaOptions& opts = {});

cplx ramanujan_value(int k);
struct RamanujanCheck {
  cplx closed_form;
  QuadValue quadrature;
};
RamanujanCheck ramanujan_check(int k);

// (1/2pi) int v(x) |sin x cos x|^{(-mu-1)/2} dx
QuadValue stationary_weight(const CircleFunction& v, cplx mu);
// 2 sqrt(2pi/t) e^{i pi/4} sp_norm W(v), lambda = i t
cplx stationary_phase_prediction(const CircleFunction& v, cplx mu, double t, double sp_norm);

struct AsymptoticsRow {
  double t;
  QuadValue value;
  double abs_scaled;
  cplx predictor;
  double rel_gap;
};
struct AsymptoticsReport {
  std::vector<AsymptoticsRow> rows;
  double fitted_exponent = 0.0;
};
double fit_loglog_slope(const std::vector<double>& t, const std::vector<double>& y);
AsymptoticsReport sweep_asymptotics(const CircleFunction& v, cplx mu, const std::vector<double>& ts,
                                    double sp_norm, int threads, const DeltaOptions& opts = {});

struct LocalizationRow {
  double offset;
  QuadValue value;
  double abs_scaled;
};
std::vector<LocalizationRow> localization_scan(const CircleFunction& a, cplx mu, double t_i,
                                               const std::vector<double>& offsets, int threads,
                                               const DeltaOptions& opts = {});

struct RhoResult {
  QuadValue lhs;
  QuadValue rhs;
  double gap;
};
// lhs = l_mod_delta(v, mu, i t); rhs = l_mod(v, v_r, v_r) at (mu, i t, i t) via the delta slot.
// lambda overrides i t when given (used for the real-parameter positivity check).
RhoResult rho_comparison(const CircleFunction& v, cplx mu, cplx lambda, double r, int threads,
                         const DeltaOptions& opts = {});
QuadValue l_mod_bump_pair(const CircleFunction& v, cplx mu, cplx lambda, double r, int threads,
                          const DeltaOptions& opts = {});

}  // namespace microlift
