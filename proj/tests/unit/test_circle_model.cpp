#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "circle_model/circle_function.hpp"
#include "circle_model/representation.hpp"
#include "numerics/gamma.hpp"

using namespace microlift;

TEST(CircleFunction, FourierRoundTrip) {
  auto f = CircleFunction::from_fourier(64, {{0, 1.0}, {3, cplx(0.5, -0.2)}, {-5, 0.25}});
  auto g = CircleFunction::from_samples(f.samples());
  EXPECT_NEAR(std::abs(g.coefficient(3) - cplx(0.5, -0.2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.coefficient(-5) - 0.25), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.coefficient(1)), 0.0, 1e-15);
  const double t = 0.37;
  cplx want = 1.0 + cplx(0.5, -0.2) * std::exp(cplx(0, 6 * t)) + 0.25 * std::exp(cplx(0, -10 * t));
  EXPECT_NEAR(std::abs(f(t) - want), 0.0, 1e-14);
  EXPECT_EQ(f.bandwidth(), 5);
}

TEST(CircleFunction, EvenProjection) {
  // e^{i theta} has no period-pi part
  auto f = CircleFunction::from_function(32, [](double t) { return std::exp(cplx(0, t)) + 1.0; });
  EXPECT_NEAR(std::abs(f(0.3) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(f.odd_mass(), std::sqrt(0.5), 1e-14);
}

TEST(CircleFunction, GridChecks) {
  EXPECT_THROW(CircleFunction::zero(30), Error);
  auto a = CircleFunction::zero(32), b = CircleFunction::zero(64);
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
  EXPECT_THROW(CircleFunction::from_fourier(32, {{9, 1.0}}), Error);
}

TEST(CircleFunction, CsvRoundTrip) {
  auto f = named_function("vonmises:0.4:2", 128);
  auto dir = std::filesystem::temp_directory_path();
  for (bool fourier : {false, true}) {
    auto path = (dir / (fourier ? "ml_cf_fourier.csv" : "ml_cf_samples.csv")).string();
    f.write_csv(path, fourier);
    auto g = CircleFunction::read_csv(path, 128);
    for (double t : {0.0, 0.9, 2.2}) EXPECT_NEAR(std::abs(f(t) - g(t)), 0.0, 1e-13);
    std::remove(path.c_str());
  }
  EXPECT_THROW(CircleFunction::read_csv("/nonexistent/x.csv"), Error);
}

TEST(CircleFunction, Rotation) {
  auto f = named_function("one_plus_cos4", 64);
  auto g = f.rotated(0.3);
  EXPECT_NEAR(std::abs(g(1.0) - f(1.3)), 0.0, 1e-14);
}

TEST(Representation, CMuClosedForm) {
  double want = std::pow(2.0, -0.5) * std::sqrt(kPi) / std::pow(gamma_complex(0.75).real(), 2);
  EXPECT_NEAR(want, 0.8346268, 1e-7);
  EXPECT_NEAR(std::abs(c_mu_closed(0.0) - want), 0.0, 1e-14);
}

TEST(Representation, KappaConstant) {
  // the quadrature normalization differs from the closed form by a fixed factor 2
  for (cplx mu : {cplx(0), cplx(0, 1), cplx(0, 2), cplx(0, 5), cplx(0, 10)}) {
    cplx k = c_mu_quadrature(mu).value / c_mu_closed(mu);
    EXPECT_NEAR(std::abs(k - 2.0), 0.0, 1e-9) << mu;
  }
}

TEST(Representation, CMuGrowth) {
  // |c_mu| decays like |mu|^{-1/2} along the imaginary axis
  double r = std::abs(c_mu_closed(cplx(0, 40))) / std::abs(c_mu_closed(cplx(0, 10)));
  EXPECT_NEAR(r, 0.5, 0.01);
}

TEST(Representation, DMu) {
  const std::size_t n = 4096;
  cplx mu(0, 2);
  EXPECT_NEAR(std::abs(d_mu(mu, named_function("e0", n)) - 1.0), 0.0, 1e-15);
  for (int k : {1, 3, 5}) EXPECT_NEAR(std::abs(d_mu(mu, named_function("e:" + std::to_string(k), n))), 0.0, 1e-10);
  auto v = named_function("vonmises:0.2:3", n);
  cplx base = d_mu(mu, v);
  for (double s : {0.3, 1.0}) {
    cplx moved = d_mu(mu, pi_act(mu, GroupElement::diagonal(s), v));
    EXPECT_LT(std::abs(moved - base), 1e-8) << s;
  }
}

TEST(Representation, PiActHomomorphism) {
  const std::size_t n = 512;
  cplx lambda(0, 1.5);
  auto v = named_function("vonmises:0.7:2", n);
  auto g = GroupElement::diagonal(0.3), h = GroupElement::rotation(0.5);
  auto lhs = pi_act(lambda, g * h, v);
  auto rhs = pi_act(lambda, g, pi_act(lambda, h, v));
  for (double t : {0.1, 1.4, 2.7}) EXPECT_LT(std::abs(lhs(t) - rhs(t)), 1e-9) << t;
}

TEST(Representation, PrincipalUnitary) {
  const std::size_t n = 1024;
  cplx lambda(0, 3);
  auto v = named_function("vonmises:0.1:2", n);
  auto w = pi_act(lambda, GroupElement::diagonal(0.4), v);
  EXPECT_NEAR(inner_product(w, w).real(), inner_product(v, v).real(), 1e-9);
}

TEST(Representation, BumpFamilyNorm) {
  for (double r : {1.0, 4.0, 16.0}) {
    auto v = bump_family(r, 4096);
    EXPECT_NEAR(inner_product(v, v).real(), 1.0, 1e-6) << r;
  }
}

TEST(Representation, NamedFunctions) {
  EXPECT_THROW(named_function("nope", 64), Error);
  EXPECT_THROW(named_function("vonmises:1", 64), Error);
  EXPECT_NEAR(std::abs(named_function("e:2", 64)(0.5) - std::exp(cplx(0, 2.0))), 0.0, 1e-14);
}
