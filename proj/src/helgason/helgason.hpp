#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "circle_model/circle_function.hpp"
#include "geometry/geometry.hpp"

namespace microlift {

// Samples on a polar grid: Gauss-Legendre radii on (0, r_max), uniform angles.
class DiskField {
 public:
  static DiskField sample(double r_max, int n_r, int n_theta, const std::function<cplx(cplx)>& f);
  static DiskField from_values(double r_max, int n_r, int n_theta, std::vector<cplx> values);

  double r_max() const { return r_max_; }
  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  double radius(int i) const { return r_[static_cast<std::size_t>(i)]; }
  double angle(int j) const { return kTwoPi * j / n_theta_; }
  cplx point(int i, int j) const { return std::polar(radius(i), angle(j)); }
  cplx value(int i, int j) const { return values_[static_cast<std::size_t>(i * n_theta_ + j)]; }
  // hyperbolic area element 4 r dr dtheta / (1 - r^2)^2 times the quadrature weight
  double volume_weight(int i) const { return vw_[static_cast<std::size_t>(i)]; }
  const std::vector<cplx>& values() const { return values_; }

  double l2_norm_sq() const;
  // max |f| on the outermost ring over max |f|
  double edge_ratio() const;
  // angular coefficient energy in the top quarter of frequencies, worst ring
  double angular_tail() const;

  void write_csv(const std::string& path) const;
  static DiskField read_csv(const std::string& path);

 private:
  void build_grid();
  double r_max_ = 0.9;
  int n_r_ = 0, n_theta_ = 0;
  std::vector<double> r_, vw_;
  std::vector<cplx> values_;
};

// F(t_k, b_l) on a uniform t grid t_k = k T/n (k = 1..n) and uniform boundary angles.
struct BoundarySpectralField {
  double t_max = 0.0;
  int n_t = 0, n_b = 0;
  std::vector<cplx> values;  // index (k-1) * n_b + l
  double t(int k) const { return t_max * k / n_t; }
  double b(int l) const { return kTwoPi * l / n_b; }
  cplx at(int k, int l) const { return values[static_cast<std::size_t>((k - 1) * n_b + l)]; }
  // end-corrected trapezoid weight of node k (t_0 = 0 carries a zero integrand)
  double t_weight(int k) const;
  void write_csv(const std::string& path) const;
  static BoundarySpectralField read_csv(const std::string& path);
};

struct WeightedDelta {
  BoundaryPoint b;
  cplx weight;
};

// Density T(b) = f(b/2) db / 2pi, f an even circle function
cplx poisson_transform(cplx lambda, const CircleFunction& density, DiskPoint z);
cplx poisson_transform(cplx lambda, const std::vector<WeightedDelta>& deltas, DiskPoint z);

cplx helgason_fourier(const DiskField& f, double t, BoundaryPoint b);
BoundarySpectralField helgason_fourier_field(const DiskField& f, double t_max, int n_t, int n_b);

// density c_P t tanh(pi t / 2) dt db
cplx helgason_inverse(const BoundarySpectralField& F, DiskPoint z, double c_p);
DiskField helgason_inverse_field(const BoundarySpectralField& F, double r_max, int n_r, int n_theta, double c_p);

// fraction of the spectral mass carried by the top tenth of the t range
double spectral_tail(const BoundarySpectralField& F);
// c_P-free spectral energy: int int |F|^2 t tanh(pi t/2) dt db
double spectral_energy(const BoundarySpectralField& F);

struct HelgasonGrids {
  double r_max = 0.92;
  int n_r = 128, n_theta = 256;
  int n_t = 200, n_b = 128;
  int rec_r = 48, rec_theta = 64;
};

struct RoundTrip {
  double t_max;
  double c_p;          // constant used
  double c_p_fit;      // least-squares optimal constant for this run
  double l2_rel_err;   // reconstruction error with c_p
  double plancherel_gap;
  double spectral_tail;
};

// Reference bump: exp(-rho(z, z0)^2 / (2 sigma^2)), sigma = 0.35, z0 = 0.15 + 0.1i
cplx reference_bump(cplx z);
// c_p <= 0 means use the fitted constant
RoundTrip helgason_roundtrip(const std::function<cplx(cplx)>& f, double t_max, double c_p,
                             const HelgasonGrids& g = {});

}  // namespace microlift
