#include "geometry/geometry.hpp"

#include <cmath>

namespace microlift {
namespace {

struct Mobius {
  cplx a, b, c, d;
};

// Disk action of g: Cayley conjugate of J g J, J = diag(1,-1), so that the
// boundary point e^{ib} corresponds to the line at angle b/2.
Mobius disk_map(const GroupElement& h) {
  double a = h(0, 0), b = -h(0, 1), c = -h(1, 0), d = h(1, 1);
  const cplx i(0.0, 1.0);
  // C = [[1,-i],[1,i]], C^{-1} = (1/2i)[[i,i],[-1,1]]
  cplx m00 = a - i * c, m01 = b - i * d;
  cplx m10 = a + i * c, m11 = b + i * d;
  cplx inv = 1.0 / (2.0 * i);
  return {inv * (m00 * i - m01), inv * (m00 * i + m01), inv * (m10 * i - m11), inv * (m10 * i + m11)};
}

cplx mobius_eval(const Mobius& m, cplx z) { return (m.a * z + m.b) / (m.c * z + m.d); }

}  // namespace

DiskPoint DiskPoint::make(cplx z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::InvalidArgument, "geometry", "disk point must satisfy |z| < 1");
  return {z};
}

BoundaryPoint BoundaryPoint::make(double b) {
  double r = std::fmod(b, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return {r};
}

SpectralParam SpectralParam::from_lambda(cplx lambda) {
  SpectralParam sp{lambda, (1.0 - lambda * lambda) / 4.0, Series::Generic};
  double re = lambda.real(), im = lambda.imag();
  if (re == 0.0)
    sp.series = Series::Principal;
  else if (im == 0.0 && re > -1.0 && re < 1.0)
    sp.series = Series::Complementary;
  else if (im == 0.0 && re < -1.0 && re == std::floor(re) && static_cast<long>(-re) % 2 == 1)
    sp.series = Series::Discrete;
  return sp;
}

const char* series_name(Series s) {
  switch (s) {
    case Series::Principal: return "principal";
    case Series::Complementary: return "complementary";
    case Series::Discrete: return "discrete";
    default: return "generic";
  }
}

GroupElement GroupElement::make(double a, double b, double c, double d) {
  double det = a * d - b * c;
  if (!std::isfinite(det) || std::abs(det) < 1e-300)
    throw Error(ErrorCode::InvalidArgument, "geometry", "group element must be invertible");
  double s = 1.0 / std::sqrt(std::abs(det));
  GroupElement g;
  g.m_ = {a * s, b * s, c * s, d * s};
  return g;
}

GroupElement GroupElement::rotation(double phi) {
  double c = std::cos(0.5 * phi), s = std::sin(0.5 * phi);
  return make(c, -s, s, c);
}

GroupElement GroupElement::diagonal(double s) { return make(std::exp(s), 0.0, 0.0, std::exp(-s)); }

GroupElement GroupElement::operator*(const GroupElement& o) const {
  return make(m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
              m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]);
}

GroupElement GroupElement::inverse() const { return make(m_[3], -m_[1], -m_[2], m_[0]); }

bool GroupElement::operator==(const GroupElement& o) const {
  auto close = [&](double sign) {
    for (int k = 0; k < 4; ++k)
      if (std::abs(m_[k] - sign * o.m_[k]) > 1e-12 * (1.0 + std::abs(m_[k]))) return false;
    return true;
  };
  return close(1.0) || close(-1.0);
}

double GroupElement::operator_norm() const {
  double a = m_[0], b = m_[1], c = m_[2], d = m_[3];
  double s = a * a + b * b + c * c + d * d;
  double det = a * d - b * c;
  return std::sqrt(0.5 * (s + std::sqrt(std::max(0.0, s * s - 4.0 * det * det))));
}

DiskPoint mobius_act(const GroupElement& g, DiskPoint z) {
  if (g.det() > 0) return {mobius_eval(disk_map(g), z.z)};
  GroupElement h = g * GroupElement::make(1, 0, 0, -1);
  return {mobius_eval(disk_map(h), std::conj(z.z))};
}

BoundaryImage boundary_act(const GroupElement& g, BoundaryPoint b) {
  GroupElement h = g;
  cplx w = std::exp(cplx(0.0, b.angle));
  if (g.det() < 0) {
    h = g * GroupElement::make(1, 0, 0, -1);
    w = std::conj(w);
  }
  Mobius m = disk_map(h);
  cplx img = mobius_eval(m, w);
  double deriv = std::abs(m.a * m.d - m.b * m.c) / std::norm(m.c * w + m.d);
  return {BoundaryPoint::make(std::arg(img)), deriv};
}

double horocycle_bracket(DiskPoint z, BoundaryPoint b) {
  return std::log((1.0 - std::norm(z.z)) / std::norm(z.z - std::exp(cplx(0.0, b.angle))));
}

cplx plane_wave(cplx lambda, DiskPoint z, BoundaryPoint b) {
  return std::exp(0.5 * (1.0 + lambda) * horocycle_bracket(z, b));
}

cplx laplace_beltrami_fd(const std::function<cplx(cplx)>& field, DiskPoint z, double h, bool richardson) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "geometry", "stencil step must be positive");
  if (std::abs(z.z) + h * std::sqrt(2.0) >= 1.0)
    throw Error(ErrorCode::StencilEscapesDisk, "geometry", "stencil leaves the disk");
  const cplx i(0.0, 1.0);
  double factor = -std::pow(1.0 - std::norm(z.z), 2) / 4.0;
  cplx f0 = field(z.z);
  auto lap = [&](double s) {
    return factor * (field(z.z + s) + field(z.z - s) + field(z.z + i * s) + field(z.z - i * s) - 4.0 * f0) / (s * s);
  };
  if (!richardson) return lap(h);
  return (4.0 * lap(0.5 * h) - lap(h)) / 3.0;
}

}  // namespace microlift
