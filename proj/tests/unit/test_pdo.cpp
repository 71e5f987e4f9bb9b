#include <gtest/gtest.h>

#include <cmath>

#include "circle_model/representation.hpp"
#include "pdo/pdo.hpp"

using namespace microlift;

TEST(Pdo, UnitSymbolIsIdentity) {
  cplx lambda(0, 3);
  auto f = named_function("vonmises:0.785398:2", 1024);
  for (cplx w : {cplx(0), cplx(0.3, 0.1), cplx(-0.2, 0.6)}) {
    DiskPoint z = DiskPoint::make(w);
    cplx p = poisson_transform(lambda, f, z);
    EXPECT_LT(std::abs(op_apply(Symbol::constant(1.0), lambda, f, z) - p), 1e-12 * std::max(1.0, std::abs(p)));
  }
}

TEST(Pdo, ConstantSymbolScales) {
  cplx lambda(0, 1);
  std::vector<WeightedDelta> d{{BoundaryPoint::make(0.3), 1.0}, {BoundaryPoint::make(2.0), cplx(0, 0.5)}};
  DiskPoint z = DiskPoint::make(cplx(0.2, -0.3));
  cplx p = poisson_transform(lambda, d, z);
  EXPECT_LT(std::abs(op_apply(Symbol::constant(cplx(2, -1)), lambda, d, z) - cplx(2, -1) * p), 1e-13);
}

TEST(Pdo, SymbolReconstruction) {
  cplx lambda(0, 2);
  DiskPoint z = DiskPoint::make(cplx(0.4, 0.2));
  for (int k : {0, 2, -3}) {
    auto a = Symbol::boundary_mode(k);
    for (double b : {0.0, 1.3, 5.0}) {
      auto rt = symbol_roundtrip(a, lambda, z, BoundaryPoint::make(b));
      EXPECT_LT(std::abs(rt.reconstructed - std::exp(cplx(0, k * b))), 1e-10);
    }
  }
}

TEST(Pdo, TabulatedSymbolExactAtNodes) {
  std::vector<double> radii{0.1, 0.5};
  const int n_theta = 4, n_b = 3;
  std::vector<cplx> v;
  for (int i = 0; i < 2 * n_theta * n_b; ++i) v.emplace_back(i, -i);
  auto a = Symbol::tabulated(radii, n_theta, n_b, v);
  DiskPoint z{std::polar(0.5, kTwoPi * 2 / n_theta)};
  EXPECT_LT(std::abs(a(z, BoundaryPoint::make(kTwoPi * 1 / n_b)) - v[(1 * n_theta + 2) * n_b + 1]), 1e-12);
  // halfway between radii
  DiskPoint m{std::polar(0.3, 0.0)};
  cplx want = 0.5 * (v[0] + v[(1 * n_theta) * n_b]);
  EXPECT_LT(std::abs(a(m, BoundaryPoint::make(0.0)) - want), 1e-12);
  EXPECT_THROW(Symbol::tabulated(radii, n_theta, n_b, {cplx(1.0)}), Error);
}

TEST(Pdo, PairingMatchesDeltaSlot) {
  auto v = named_function("one_plus_cos4", 64);
  auto a = microlocal_pairing(v, 0.0, cplx(0, 20));
  auto b = l_mod_delta(v, 0.0, cplx(0, 20));
  EXPECT_EQ(a.value, b.value);
}
