#pragma once

#include <cstdint>
#include <random>

namespace microlift {

// mt19937_64 with a fixed bits-to-double mapping, so draws match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace microlift
