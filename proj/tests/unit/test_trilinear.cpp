#include <gtest/gtest.h>

#include <cmath>

#include "circle_model/representation.hpp"
#include "trilinear/trilinear.hpp"

using namespace microlift;

namespace {

// Frozen from an independent evaluation of the K-type series
//   sum_k F_k(A) F_k(B) F_k(C),  F_k(s) = (-1)^k Gamma(s+1) / (2^s Gamma(1+s/2+k) Gamma(1+s/2-k))
// in 50-digit arithmetic.
struct Oracle {
  double t;
  cplx value;
};

void expect_close(cplx got, cplx want, double rel, const std::string& what) {
  EXPECT_LT(std::abs(got - want) / std::abs(want), rel) << what << " got " << got << " want " << want;
}

}  // namespace

TEST(Kernel, Exponents) {
  auto ex = TripleExponents::from_lambdas(cplx(0, 1), cplx(0, 2), cplx(0, 3));
  EXPECT_NEAR(std::abs(ex.alpha - cplx(0, -4)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ex.e12() - cplx(-0.5, 0)), 0.0, 1e-15);
  EXPECT_THROW(TripleExponents::from_lambdas(-1.5, 0.5, 0.5).check_direct_path(), Error);
}

TEST(Kernel, Homogeneity) {
  cplx l1(0, 1.3), l2(0.2, 0.4), l3(0, -2);
  Vec2 s1{0.3, 1.1}, s2{-0.7, 0.2}, s3{0.5, -0.9};
  cplx k = kernel_eval_plane(l1, l2, l3, s1, s2, s3);
  const double a = -1.7;
  cplx scaled = kernel_eval_plane(l1, l2, l3, {a * s1[0], a * s1[1]}, s2, s3);
  cplx want = std::exp((-1.0 - l1) * std::log(std::abs(a))) * k;
  EXPECT_LT(std::abs(scaled - want) / std::abs(want), 1e-13);
}

TEST(Kernel, CircleMatchesPlane) {
  cplx l1(0, 1), l2(0, 2), l3(0.3, 0);
  double x = 0.4, y = 1.9, z = 2.8;
  auto v = [](double t) { return Vec2{std::cos(t), std::sin(t)}; };
  EXPECT_LT(std::abs(kernel_eval_circle(l1, l2, l3, x, y, z) - kernel_eval_plane(l1, l2, l3, v(x), v(y), v(z))),
            1e-13);
  EXPECT_THROW(kernel_eval_circle(l1, l2, l3, x, x, z), Error);
}

TEST(Trilinear, DeltaSlotOracle) {
  auto e0 = named_function("e0", 64);
  const Oracle cases[] = {
      {0.0, cplx(5.5728157187427074, 0.0)},
      {5.0, cplx(0.58185967095925594, 0.61208448142575546)},
      {40.0, cplx(0.20993638481784792, 0.21125284469217045)},
  };
  for (const auto& c : cases) {
    auto q = l_mod_delta(e0, 0.0, cplx(0, c.t));
    expect_close(q.value, c.value, 1e-8, "t=" + std::to_string(c.t));
    EXPECT_LT(q.err_estimate, 1e-6);
  }
}

TEST(Trilinear, DeltaSlotOracleNonzeroMu) {
  auto e0 = named_function("e0", 64);
  auto q = l_mod_delta(e0, cplx(0, 2), cplx(0, 10));
  expect_close(q.value, cplx(-0.17568229890140863, 0.2500978675241605), 1e-8, "mu=2i t=10");
}

TEST(Trilinear, DiscreteBranchOracle) {
  auto e0 = named_function("e0", 64);
  struct Row {
    int k;
    double t;
    cplx value;
  };
  const Row rows[] = {
      {3, 3.0, cplx(0.051403081992803379, 0.12927400084141862)},
      {5, 3.0, cplx(-0.010506085525824626, 0.049402366780500456)},
      {5, 20.0, cplx(0.01296877347114789, 0.018040976981614881)},
      {7, 3.0, cplx(-0.016526858950396937, 0.010730261411262098)},
      {7, 20.0, cplx(0.0042916182263832733, 0.0083578541792892847)},
      {9, 100.0, cplx(0.0011795374836546161, 0.0014499159236613863)},
  };
  for (const auto& r : rows) {
    auto q = l_mod_disc(e0, r.k, cplx(0, r.t));
    expect_close(q.value, r.value, 1e-6, "k=" + std::to_string(r.k) + " t=" + std::to_string(r.t));
  }
}

TEST(Trilinear, DiscreteBranchPole) {
  auto e0 = named_function("e0", 64);
  try {
    l_mod_disc(e0, 3, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ExponentOutOfRange);
  }
}

TEST(Trilinear, Ramanujan) {
  EXPECT_NEAR(ramanujan_value(3).real(), -2.0 / (3.0 * kPi), 1e-15);
  EXPECT_NEAR(ramanujan_value(3).real(), -0.212206590789, 1e-12);
  EXPECT_NEAR(ramanujan_value(7).real(), 0.036378272707, 1e-12);
  EXPECT_NEAR(ramanujan_value(11).real(), -0.007349146001, 1e-12);
  for (int k : {3, 7, 11}) {
    auto c = ramanujan_check(k);
    EXPECT_LT(std::abs(c.closed_form - c.quadrature.value), 1e-8) << k;
  }
}

TEST(Trilinear, TripleRotationInvariance) {
  SimplexOptions o;
  o.depth = 16;
  o.order = 6;
  o.trim_rel = 1e-9;
  o.resolve_rel = 1e-6;
  o.estimate_error = false;
  const std::size_t n = 256;
  auto f1 = named_function("one_plus_cos4", n);
  auto f2 = CircleFunction::from_fourier(n, {{0, 1.0}, {1, cplx(0.3, 0.1)}});
  auto f3 = CircleFunction::from_fourier(n, {{0, 1.0}, {-1, 0.4}});
  cplx l1(0, 1), l2(0, 2), l3(0, 0.5);
  cplx base = l_mod(f1, f2, f3, l1, l2, l3, o).value;
  cplx moved = l_mod(f1.rotated(0.4), f2.rotated(0.4), f3.rotated(0.4), l1, l2, l3, o).value;
  EXPECT_LT(std::abs(moved - base) / std::abs(base), 1e-6);
}

TEST(Trilinear, RegularizationRequired) {
  auto e0 = named_function("e0", 64);
  try {
    l_mod(e0, e0, e0, -1.5, 0.2, 0.2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RegularizationRequired);
  }
}

TEST(Trilinear, LogLogSlope) {
  std::vector<double> t{50, 100, 200, 400}, y;
  for (double x : t) y.push_back(3.0 * std::pow(x, -0.5));
  EXPECT_NEAR(fit_loglog_slope(t, y), -0.5, 1e-13);
}

TEST(Trilinear, StationaryWeightOfE0) {
  // (1/2pi) int |sin x cos x|^{-1/2} at mu = 0
  auto w = stationary_weight(named_function("e0", 64), 0.0);
  double want = std::sqrt(2.0) * c_mu_quadrature(0.0).value.real();
  EXPECT_NEAR(w.value.real(), want, 1e-9);
}
