#include <gtest/gtest.h>

#include <cmath>

#include "geometry/geometry.hpp"

using namespace microlift;

TEST(Geometry, DiskPointValidation) {
  EXPECT_NO_THROW(DiskPoint::make(cplx(0.3, -0.9)));
  EXPECT_THROW(DiskPoint::make(cplx(1.0, 0.0)), Error);
  EXPECT_THROW(DiskPoint::make(cplx(0.8, 0.8)), Error);
}

TEST(Geometry, SeriesClassification) {
  EXPECT_EQ(SpectralParam::from_lambda(cplx(0, 3)).series, Series::Principal);
  EXPECT_EQ(SpectralParam::from_lambda(0.5).series, Series::Complementary);
  EXPECT_EQ(SpectralParam::from_lambda(-3.0).series, Series::Discrete);
  EXPECT_EQ(SpectralParam::from_lambda(-2.0).series, Series::Generic);
  EXPECT_EQ(SpectralParam::from_lambda(cplx(0.5, 1)).series, Series::Generic);
  auto sp = SpectralParam::from_lambda(cplx(0, 2));
  EXPECT_NEAR(std::abs(sp.mu - 1.25), 0.0, 1e-15);
}

TEST(Geometry, GroupElementNormalized) {
  auto g = GroupElement::make(2, 1, 1, 3);
  EXPECT_NEAR(std::abs(g.det()), 1.0, 1e-15);
  EXPECT_TRUE(g * g.inverse() == GroupElement::identity());
  EXPECT_THROW(GroupElement::make(1, 2, 2, 4), Error);
}

TEST(Geometry, RotationAction) {
  const double phi = 0.7;
  auto g = GroupElement::rotation(phi);
  cplx z(0.2, -0.4);
  auto w = mobius_act(g, DiskPoint::make(z));
  EXPECT_NEAR(std::abs(w.z - z * std::exp(cplx(0, phi))), 0.0, 1e-15);
  auto im = boundary_act(g, BoundaryPoint::make(1.1));
  EXPECT_NEAR(std::remainder(im.point.angle - 1.1 - phi, kTwoPi), 0.0, 1e-14);
  EXPECT_NEAR(im.deriv, 1.0, 1e-14);
}

TEST(Geometry, BoundaryDerivativeChainRule) {
  auto g = GroupElement::diagonal(0.6) * GroupElement::rotation(0.3);
  auto h = GroupElement::rotation(-1.2) * GroupElement::diagonal(-0.4);
  for (double b : {0.0, 1.0, 2.5, 4.0}) {
    auto hb = boundary_act(h, BoundaryPoint::make(b));
    auto ghb = boundary_act(g, hb.point);
    auto gh = boundary_act(g * h, BoundaryPoint::make(b));
    EXPECT_NEAR(gh.deriv, ghb.deriv * hb.deriv, 1e-12);
    EXPECT_NEAR(std::remainder(gh.point.angle - ghb.point.angle, kTwoPi), 0.0, 1e-12);
  }
}

TEST(Geometry, Bracket) {
  EXPECT_NEAR(horocycle_bracket(DiskPoint::make(0), BoundaryPoint::make(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(horocycle_bracket(DiskPoint::make(0.5), BoundaryPoint::make(0.0)), std::log(3.0), 1e-14);
  cplx z(0.3, 0.2);
  const double phi = 1.3, b = 0.4;
  EXPECT_NEAR(horocycle_bracket(DiskPoint::make(z * std::exp(cplx(0, phi))), BoundaryPoint::make(b + phi)),
              horocycle_bracket(DiskPoint::make(z), BoundaryPoint::make(b)), 1e-14);
}

TEST(Geometry, BracketCocycle) {
  // <gz, gb> = <z, b> - log|g'(b)|
  auto g = GroupElement::make(1.3, 0.4, -0.2, 0.9);
  DiskPoint z = DiskPoint::make(cplx(-0.1, 0.5));
  BoundaryPoint b = BoundaryPoint::make(2.2);
  auto gb = boundary_act(g, b);
  double lhs = horocycle_bracket(mobius_act(g, z), gb.point);
  EXPECT_NEAR(lhs, horocycle_bracket(z, b) - std::log(std::abs(gb.deriv)), 1e-12);
}

TEST(Geometry, PlaneWave) {
  EXPECT_NEAR(std::abs(plane_wave(cplx(0, 5), DiskPoint::make(0), BoundaryPoint::make(1)) - 1.0), 0.0, 1e-15);
  cplx z(0.1, 0.6);
  double p = (1 - std::norm(z)) / std::norm(z - std::exp(cplx(0, 0.8)));
  EXPECT_NEAR(std::abs(plane_wave(1.0, DiskPoint::make(z), BoundaryPoint::make(0.8)) - p), 0.0, 1e-13);
  cplx want = std::sqrt(3.0) * std::exp(cplx(0, std::log(3.0)));
  EXPECT_NEAR(std::abs(plane_wave(cplx(0, 2), DiskPoint::make(0.5), BoundaryPoint::make(0)) - want), 0.0, 1e-14);
}

TEST(Geometry, PlaneWaveEigenfunction) {
  for (cplx lambda : {cplx(0, 2), cplx(0, 5), cplx(0.5)}) {
    cplx mu = (1.0 - lambda * lambda) / 4.0;
    DiskPoint z = DiskPoint::make(cplx(0.25, -0.3));
    BoundaryPoint b = BoundaryPoint::make(0.9);
    auto f = [&](cplx w) { return plane_wave(lambda, DiskPoint::make(w), b); };
    cplx lap = laplace_beltrami_fd(f, z, 1e-3, true);
    EXPECT_LT(std::abs(lap - mu * f(z.z)) / std::abs(f(z.z)), 1e-4) << lambda;
  }
}

TEST(Geometry, StencilEscapes) {
  auto f = [](cplx) { return cplx(1.0); };
  try {
    laplace_beltrami_fd(f, DiskPoint::make(0.9995), 1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StencilEscapesDisk);
  }
}
