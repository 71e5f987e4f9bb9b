// Acceptance runner: one line per criterion 1-15, exit status 0 only if all pass.
// 15 reruns the suite (same worker count, then 8 workers) and compares the JSON reports byte for byte.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>

#include <json.hpp>

#include "microlift/microlift.h"

namespace {

struct Run {
  int status = ML_ERR_INTERNAL;
  std::string report;
  int all_pass = 0;
  double seconds = 0.0;
};

Run run(int threads) {
  Run r;
  char* text = nullptr;
  auto t0 = std::chrono::steady_clock::now();
  r.status = ml_verify(nullptr, threads, nullptr, &text, &r.all_pass);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (text) {
    r.report = text;
    ml_string_free(text);
  }
  return r;
}

std::string summary(const nlohmann::json& crit) {
  std::string s;
  for (const auto& c : crit["checks"]) {
    if (!s.empty()) s += "; ";
    char buf[64];
    if (c["measured"].is_null())
      std::snprintf(buf, sizeof buf, "nan");
    else
      std::snprintf(buf, sizeof buf, "%.3g", c["measured"].get<double>());
    s += c["name"].get<std::string>() + " = " + buf;
    if (c["relation"] != "decreasing") {
      std::snprintf(buf, sizeof buf, "%.3g", c["tolerance"].get<double>());
      s += " " + c["relation"].get<std::string>() + " " + buf;
    }
    if (!c["pass"].get<bool>()) s += " [FAIL]";
  }
  if (crit.contains("error")) s += " error: " + crit["error"].get<std::string>();
  return s;
}

}  // namespace

int main() {
  Run first = run(1);
  if (first.status != ML_OK) {
    std::printf("verify failed to run: %s\n", ml_last_error());
    return 1;
  }
  std::fprintf(stderr, "suite, 1 worker: %.1f s\n", first.seconds);
  auto report = nlohmann::json::parse(first.report);
  bool ok = true;
  int printed = 0;
  for (const auto& c : report["criteria"]) {
    bool pass = c["pass"].get<bool>();
    ok = ok && pass;
    std::printf("criterion %2d %-13s %s  %s\n", c["id"].get<int>(), c["key"].get<std::string>().c_str(),
                pass ? "PASS" : "FAIL", summary(c).c_str());
    ++printed;
  }
  std::fflush(stdout);

  Run again = run(1);
  Run wide = run(8);
  std::fprintf(stderr, "suite again: %.1f s, 8 workers: %.1f s\n", again.seconds, wide.seconds);
  bool same_repeat = again.status == ML_OK && again.report == first.report;
  bool same_wide = wide.status == ML_OK && wide.report == first.report;
  bool det = same_repeat && same_wide;
  std::printf("criterion 15 determinism    %s  repeat identical = %s; 1 vs 8 workers identical = %s\n",
              det ? "PASS" : "FAIL", same_repeat ? "yes" : "no", same_wide ? "yes" : "no");
  ok = ok && det && printed == 14;
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
