#pragma once

#include <set>
#include <string>
#include <vector>

#include "verify/ledger.hpp"

namespace microlift {

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "<=", ">=", "<" or "decreasing"
  bool pass = false;
};

struct Criterion {
  int id = 0;
  std::string key;
  std::string title;
  std::vector<Check> checks;
  std::string error;  // set when the criterion could not be evaluated
  bool pass() const;
};

struct VerifyOptions {
  std::set<int> only;  // empty: all
  int threads = 1;
  std::string ledger_path;
};

inline constexpr int kCriteriaCount = 14;

// ids for a comma separated list of ids, criterion keys or module names
std::set<int> parse_only(const std::string& spec);
std::string criterion_key(int id);

std::vector<Criterion> run_verify(const VerifyOptions& opts);
// stable JSON: no timings, fixed key order
std::string report_json(const std::vector<Criterion>& crit, const std::string& ledger_version);

// measured constants for the ledger; the grid strings describe how each was obtained
Ledger calibrate(const std::string& date, int threads);

}  // namespace microlift
