#pragma once

#include <map>
#include <optional>
#include <string>

namespace microlift {

struct LedgerEntry {
  double value = 0.0;
  std::string date;
  std::string grid;
};

// Normalization constants pinned once and asserted afterwards.
struct Ledger {
  std::string version;
  std::map<std::string, LedgerEntry> entries;

  std::optional<double> value(const std::string& key) const;
  static Ledger load(const std::string& path);
  void save(const std::string& path) const;
};

inline constexpr const char* kLedgerEnv = "MICROLIFT_LEDGER";

// explicit path, else $MICROLIFT_LEDGER, else the build-time default
std::string ledger_path(const std::string& explicit_path = {});

}  // namespace microlift
