#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "verify/ledger.hpp"
#include "verify/table.hpp"
#include "verify/verify.hpp"

using namespace microlift;

TEST(Ledger, SaveLoad) {
  Ledger l;
  l.version = "2026-01-02";
  l.entries["kappa_measure"] = {2.0, "2026-01-02", "quadrature grid"};
  l.entries["sp_norm_constant"] = {0.15915494309189535, "2026-01-02", "t = 200, 400"};
  auto path = (std::filesystem::temp_directory_path() / "ml_ledger_test.json").string();
  l.save(path);
  auto m = Ledger::load(path);
  EXPECT_EQ(m.version, "2026-01-02");
  ASSERT_TRUE(m.value("sp_norm_constant").has_value());
  EXPECT_EQ(*m.value("sp_norm_constant"), 0.15915494309189535);
  EXPECT_EQ(m.entries.at("kappa_measure").grid, "quadrature grid");
  EXPECT_FALSE(m.value("missing").has_value());
  std::remove(path.c_str());
  EXPECT_THROW(Ledger::load("/nonexistent/ledger.json"), Error);
}

TEST(Ledger, PathResolution) {
  EXPECT_EQ(ledger_path("/x/y.json"), "/x/y.json");
  setenv(kLedgerEnv, "/from/env.json", 1);
  EXPECT_EQ(ledger_path(), "/from/env.json");
  unsetenv(kLedgerEnv);
  EXPECT_EQ(ledger_path(), MICROLIFT_LEDGER_DEFAULT);
}

TEST(Ledger, ShippedConstants) {
  auto l = Ledger::load(MICROLIFT_LEDGER_DEFAULT);
  ASSERT_TRUE(l.value("kappa_measure").has_value());
  EXPECT_NEAR(*l.value("kappa_measure"), 2.0, 1e-9);
  ASSERT_TRUE(l.value("sp_norm_constant").has_value());
  EXPECT_NEAR(*l.value("sp_norm_constant"), 1.0 / kTwoPi, 1e-5);
  ASSERT_TRUE(l.value("plancherel_c_p").has_value());
  EXPECT_NEAR(*l.value("plancherel_c_p"), 1.0 / (16.0 * kPi * kPi), 1e-6);
}

TEST(Verify, ParseOnly) {
  EXPECT_EQ(parse_only(""), std::set<int>{});
  EXPECT_EQ(parse_only("1,3"), (std::set<int>{1, 3}));
  EXPECT_EQ(parse_only("gamma,c_mu"), (std::set<int>{1, 3}));
  EXPECT_EQ(parse_only("helgason"), (std::set<int>{10, 11}));
  EXPECT_EQ(criterion_key(14), "rho");
  EXPECT_THROW(parse_only("99"), Error);
  EXPECT_THROW(parse_only("nonsense"), Error);
}

TEST(Verify, FastCriteriaPassAndAreDeterministic) {
  VerifyOptions o;
  o.only = {1, 2, 4, 8, 9, 11, 12};
  auto a = run_verify(o);
  ASSERT_EQ(a.size(), o.only.size());
  for (const auto& c : a) EXPECT_TRUE(c.pass()) << c.id << " " << c.error;
  o.threads = 4;
  auto b = run_verify(o);
  EXPECT_EQ(report_json(a, "v"), report_json(b, "v"));
}

TEST(Verify, MissingLedgerEntryFails) {
  auto path = (std::filesystem::temp_directory_path() / "ml_empty_ledger.json").string();
  Ledger empty;
  empty.version = "empty";
  empty.save(path);
  VerifyOptions o;
  o.only = {3};
  o.ledger_path = path;
  auto r = run_verify(o);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_FALSE(r[0].pass());
  bool named = false;
  for (const auto& c : r[0].checks) named |= c.name == "ledger kappa_measure" && !c.pass;
  EXPECT_TRUE(named);
  std::remove(path.c_str());
}

TEST(Table, CsvLayout) {
  CsvTable t({"a", "b"});
  t.note("sweep");
  t.add_row({"1", fmt(0.1)});
  std::string s = t.str();
  EXPECT_NE(s.find("# sweep\n"), std::string::npos);
  EXPECT_NE(s.find("a,b\n1,0.10000000000000001\n"), std::string::npos);
}
