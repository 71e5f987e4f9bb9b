#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "microlift/microlift.h"

namespace {

const double kPi = 3.14159265358979323846;

ml_complex c(double re, double im = 0.0) { return ml_complex{re, im}; }

struct Circle {
  ml_circle* p = nullptr;
  ~Circle() { ml_circle_free(p); }
};

}  // namespace

TEST(CApi, GammaAndErrors) {
  ml_complex g;
  ASSERT_EQ(ml_gamma(c(0.5), &g), ML_OK);
  EXPECT_NEAR(g.re, std::sqrt(kPi), 1e-14);
  EXPECT_EQ(ml_gamma(c(-2.0), &g), ML_ERR_GAMMA_POLE);
  EXPECT_NE(std::strlen(ml_last_error()), 0u);
  EXPECT_STREQ(ml_status_name(ML_ERR_GAMMA_POLE), "gamma-pole");
  EXPECT_EQ(ml_gamma(c(1.0), nullptr), ML_ERR_INVALID_ARGUMENT);
}

TEST(CApi, CircleHandles) {
  Circle f;
  ASSERT_EQ(ml_circle_named("one_plus_cos4", 64, &f.p), ML_OK);
  ml_complex v;
  ASSERT_EQ(ml_circle_eval(f.p, 0.0, &v), ML_OK);
  EXPECT_NEAR(v.re, 2.0, 1e-14);
  Circle bad;
  EXPECT_EQ(ml_circle_named("nope", 64, &bad.p), ML_ERR_PARSE);
  EXPECT_EQ(bad.p, nullptr);
  Circle odd;
  EXPECT_EQ(ml_circle_named("e0", 30, &odd.p), ML_ERR_INVALID_ARGUMENT);
  int k[] = {0, 2};
  ml_complex cs[] = {c(1.0), c(0.0, 1.0)};
  Circle h;
  ASSERT_EQ(ml_circle_fourier(64, k, cs, 2, &h.p), ML_OK);
  ASSERT_EQ(ml_circle_eval(h.p, 0.0, &v), ML_OK);
  EXPECT_NEAR(v.im, 1.0, 1e-14);
}

TEST(CApi, SpecialValues) {
  ml_complex closed;
  ml_quad q;
  ASSERT_EQ(ml_c_mu(c(0.0), &closed, &q), ML_OK);
  EXPECT_NEAR(closed.re, 0.8346268, 1e-7);
  EXPECT_NEAR(q.value.re / closed.re, 2.0, 1e-9);
  ASSERT_EQ(ml_ramanujan(3, &closed, &q), ML_OK);
  EXPECT_NEAR(closed.re, -2.0 / (3.0 * kPi), 1e-14);
  EXPECT_NEAR(q.value.re, closed.re, 1e-8);
  ml_complex w;
  ASSERT_EQ(ml_plane_wave(c(0.0, 2.0), c(0.5), 0.0, &w), ML_OK);
  EXPECT_NEAR(w.re, std::sqrt(3.0) * std::cos(std::log(3.0)), 1e-14);
  EXPECT_EQ(ml_plane_wave(c(0.0, 2.0), c(1.0), 0.0, &w), ML_ERR_INVALID_ARGUMENT);
}

TEST(CApi, DeltaSlot) {
  Circle e0;
  ASSERT_EQ(ml_circle_named("e0", 64, &e0.p), ML_OK);
  ml_quad q;
  ASSERT_EQ(ml_l_mod_delta(e0.p, c(0.0), c(0.0, 5.0), c(0.0, 5.0), &q), ML_OK);
  EXPECT_NEAR(q.value.re, 0.58185967095925594, 1e-8);
  EXPECT_NEAR(q.value.im, 0.61208448142575546, 1e-8);
  ASSERT_EQ(ml_l_mod_disc(e0.p, 5, c(0.0, 20.0), &q), ML_OK);
  EXPECT_NEAR(q.value.re, 0.01296877347114789, 1e-8);
  EXPECT_EQ(ml_l_mod_disc(e0.p, 3, c(0.0), &q), ML_ERR_EXPONENT_OUT_OF_RANGE);
}

TEST(CApi, Symbols) {
  ml_symbol* one = nullptr;
  ASSERT_EQ(ml_symbol_constant(c(1.0), &one), ML_OK);
  Circle f;
  ASSERT_EQ(ml_circle_named("vonmises:0.5:2", 512, &f.p), ML_OK);
  ml_complex a, p;
  ASSERT_EQ(ml_pdo_apply(one, c(0.0, 3.0), f.p, c(0.2, 0.1), &a), ML_OK);
  ASSERT_EQ(ml_poisson(c(0.0, 3.0), f.p, c(0.2, 0.1), &p), ML_OK);
  EXPECT_NEAR(a.re, p.re, 1e-12);
  EXPECT_NEAR(a.im, p.im, 1e-12);
  ml_symbol_free(one);
  ml_symbol* mode = nullptr;
  ASSERT_EQ(ml_symbol_boundary_mode(2, &mode), ML_OK);
  ml_complex applied, rec;
  ASSERT_EQ(ml_symbol_roundtrip(mode, c(0.0, 2.0), c(0.3, -0.1), 1.0, &applied, &rec), ML_OK);
  EXPECT_NEAR(rec.re, std::cos(2.0), 1e-10);
  EXPECT_NEAR(rec.im, std::sin(2.0), 1e-10);
  ml_symbol_free(mode);
}

TEST(CApi, LedgerAndConventions) {
  char* path = nullptr;
  char* version = nullptr;
  ASSERT_EQ(ml_ledger_info(nullptr, &path, &version), ML_OK);
  EXPECT_NE(std::string(path).find("constants_ledger.json"), std::string::npos);
  EXPECT_FALSE(std::string(version).empty());
  ml_string_free(path);
  ml_string_free(version);
  char* text = nullptr;
  ASSERT_EQ(ml_conventions(nullptr, &text), ML_OK);
  EXPECT_EQ(text[0], '#');
  ml_string_free(text);
  EXPECT_EQ(ml_ledger_info("/nonexistent/l.json", &path, &version), ML_ERR_IO);
}

TEST(CApi, VerifySubset) {
  char* report = nullptr;
  int all_pass = 0;
  ASSERT_EQ(ml_verify("gamma,8", 1, nullptr, &report, &all_pass), ML_OK);
  EXPECT_EQ(all_pass, 1);
  std::string r(report);
  ml_string_free(report);
  EXPECT_NE(r.find("\"key\": \"gamma\""), std::string::npos);
  EXPECT_NE(r.find("\"id\": 8"), std::string::npos);
  EXPECT_EQ(ml_verify("bogus", 1, nullptr, &report, &all_pass), ML_ERR_INVALID_ARGUMENT);
}
