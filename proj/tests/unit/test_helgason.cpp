#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "circle_model/representation.hpp"
#include "helgason/helgason.hpp"

using namespace microlift;

TEST(Poisson, ConstantDensity) {
  auto e0 = named_function("e0", 256);
  EXPECT_NEAR(std::abs(poisson_transform(cplx(0, 2), e0, DiskPoint::make(0)) - 1.0), 0.0, 1e-14);
  // radial: the spherical function depends on |z| only
  cplx a = poisson_transform(cplx(0, 2), e0, DiskPoint::make(0.4));
  cplx b = poisson_transform(cplx(0, 2), e0, DiskPoint::make(std::polar(0.4, 1.1)));
  EXPECT_LT(std::abs(a - b), 1e-12);
}

TEST(Poisson, DeltaIsPlaneWave) {
  cplx lambda(0, 3);
  DiskPoint z = DiskPoint::make(cplx(0.2, 0.5));
  BoundaryPoint b = BoundaryPoint::make(1.7);
  cplx p = poisson_transform(lambda, {{b, cplx(2.0, 0)}}, z);
  EXPECT_LT(std::abs(p - 2.0 * plane_wave(lambda, z, b)), 1e-14);
}

TEST(Poisson, Eigenfunction) {
  for (cplx lambda : {cplx(0, 2), cplx(0.5)}) {
    auto f = named_function("vonmises:0.3:2", 512);
    auto u = [&](cplx w) { return poisson_transform(lambda, f, DiskPoint::make(w)); };
    DiskPoint z = DiskPoint::make(cplx(0.1, 0.35));
    cplx lap = laplace_beltrami_fd(u, z, 1e-3, true);
    cplx want = (1.0 - lambda * lambda) / 4.0 * u(z.z);
    EXPECT_LT(std::abs(lap - want) / std::abs(want), 1e-4) << lambda;
  }
}

TEST(Poisson, Equivariance) {
  cplx lambda(0, 2);
  auto f = named_function("vonmises:0.785398:2", 1024) + named_function("one_plus_cos4", 1024);
  auto g = GroupElement::diagonal(0.35) * GroupElement::rotation(0.8);
  auto gf = pi_act(lambda, g, f, ActPath::Circle);
  for (cplx w : {cplx(0), cplx(0.3, -0.2), cplx(-0.5, 0.4)}) {
    DiskPoint z = DiskPoint::make(w);
    cplx lhs = poisson_transform(lambda, gf, z);
    cplx rhs = poisson_transform(lambda, f, mobius_act(g.inverse(), z));
    EXPECT_LT(std::abs(lhs - rhs), 1e-9) << w;
  }
}

TEST(DiskField, VolumeAndCsv) {
  const double r_max = 0.6;
  auto f = DiskField::sample(r_max, 32, 16, [](cplx) { return cplx(1.0); });
  // hyperbolic area of the disk of Euclidean radius r: 4 pi r^2 / (1 - r^2)
  double want = 4.0 * kPi * r_max * r_max / (1.0 - r_max * r_max);
  EXPECT_NEAR(f.l2_norm_sq(), want, 1e-10 * want);
  auto path = (std::filesystem::temp_directory_path() / "ml_disk_field.csv").string();
  f.write_csv(path);
  auto g = DiskField::read_csv(path);
  EXPECT_EQ(g.n_r(), 32);
  EXPECT_EQ(g.n_theta(), 16);
  EXPECT_NEAR(g.l2_norm_sq(), f.l2_norm_sq(), 1e-12 * want);
  std::remove(path.c_str());
}

TEST(Helgason, RadialTransformIndependentOfB) {
  // angular resolution must carry the plane wave near the rim, about 0.92^k
  auto f = DiskField::sample(0.92, 64, 256, reference_bump);
  auto radial = DiskField::sample(0.92, 64, 256, [](cplx z) { return std::exp(-4.0 * std::norm(z)); });
  cplx a = helgason_fourier(radial, 2.0, BoundaryPoint::make(0.0));
  cplx b = helgason_fourier(radial, 2.0, BoundaryPoint::make(2.1));
  EXPECT_LT(std::abs(a - b), 1e-10 * std::abs(a));
  EXPECT_GT(std::abs(helgason_fourier(f, 2.0, BoundaryPoint::make(0.0))), 0.0);
}

TEST(Helgason, SpectralTrapezoidWeights) {
  BoundarySpectralField F;
  F.t_max = 10.0;
  F.n_t = 100;
  F.n_b = 1;
  double acc = 0.0;
  for (int k = 1; k <= F.n_t; ++k) acc += F.t_weight(k) * F.t(k) * F.t(k);
  EXPECT_NEAR(acc, 1000.0 / 3.0, 1e-9);
}

TEST(Helgason, ReferenceBumpPeak) {
  EXPECT_NEAR(std::abs(reference_bump(cplx(0.15, 0.1))), 1.0, 1e-14);
  EXPECT_LT(std::abs(reference_bump(cplx(0.9, 0))), 1e-3);
}
