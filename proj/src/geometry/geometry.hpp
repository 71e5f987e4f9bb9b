#pragma once

#include <array>
#include <functional>

#include "common.hpp"

namespace microlift {

struct DiskPoint {
  cplx z;
  static DiskPoint make(cplx z);
};

struct BoundaryPoint {
  double angle;
  static BoundaryPoint make(double b);
};

enum class Series { Principal, Complementary, Discrete, Generic };

struct SpectralParam {
  cplx lambda;
  cplx mu;
  Series series;
  static SpectralParam from_lambda(cplx lambda);
};

const char* series_name(Series s);

// Real 2x2 matrix modulo scalars, |det| = 1. Row-major a b / c d.
class GroupElement {
 public:
  static GroupElement make(double a, double b, double c, double d);
  static GroupElement identity() { return make(1, 0, 0, 1); }
  // disk rotation about 0 by phi (boundary angle b -> b + phi)
  static GroupElement rotation(double phi);
  static GroupElement diagonal(double s);

  double operator()(int i, int j) const { return m_[2 * i + j]; }
  double det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  GroupElement operator*(const GroupElement& o) const;
  GroupElement inverse() const;
  bool operator==(const GroupElement& o) const;
  double operator_norm() const;

 private:
  std::array<double, 4> m_{1, 0, 0, 1};
};

DiskPoint mobius_act(const GroupElement& g, DiskPoint z);

struct BoundaryImage {
  BoundaryPoint point;
  double deriv;
};
BoundaryImage boundary_act(const GroupElement& g, BoundaryPoint b);

double horocycle_bracket(DiskPoint z, BoundaryPoint b);
cplx plane_wave(cplx lambda, DiskPoint z, BoundaryPoint b);

// -((1-|z|^2)^2/4) (dxx + dyy) by the 5-point stencil; Richardson over h, h/2 when asked.
cplx laplace_beltrami_fd(const std::function<cplx(cplx)>& field, DiskPoint z, double h, bool richardson = true);

}  // namespace microlift
