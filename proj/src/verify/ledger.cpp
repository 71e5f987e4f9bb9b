#include "verify/ledger.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "common.hpp"

#ifndef MICROLIFT_LEDGER_DEFAULT
#define MICROLIFT_LEDGER_DEFAULT "data/constants_ledger.json"
#endif

namespace microlift {

using nlohmann::ordered_json;

std::optional<double> Ledger::value(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end() || !std::isfinite(it->second.value)) return std::nullopt;
  return it->second.value;
}

Ledger Ledger::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "verify", "cannot read ledger " + path);
  Ledger l;
  try {
    ordered_json j = ordered_json::parse(in);
    l.version = j.value("version", std::string{});
    for (const auto& [key, e] : j.at("constants").items()) {
      LedgerEntry entry;
      entry.value = e.at("value").get<double>();
      entry.date = e.value("date", std::string{});
      entry.grid = e.value("grid", std::string{});
      l.entries[key] = entry;
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::Parse, "verify", "malformed ledger " + path + ": " + ex.what());
  }
  return l;
}

void Ledger::save(const std::string& path) const {
  ordered_json j;
  j["version"] = version;
  ordered_json c = ordered_json::object();
  for (const auto& [key, e] : entries) c[key] = {{"value", e.value}, {"date", e.date}, {"grid", e.grid}};
  j["constants"] = c;
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "verify", "cannot write ledger " + path);
  out << j.dump(2) << '\n';
}

std::string ledger_path(const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* env = std::getenv(kLedgerEnv); env && *env) return env;
  return MICROLIFT_LEDGER_DEFAULT;
}

}  // namespace microlift
