#include "numerics/gamma.hpp"

#include <cmath>

namespace microlift {
namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log(sin(pi z)), stable for large |Im z|.
cplx log_sin_pi(cplx z) {
  double x = z.real() - 2.0 * std::floor(z.real() / 2.0);
  cplx w(x, z.imag());
  const cplx i(0.0, 1.0);
  if (w.imag() > 1.0) {
    // sin(pi w) = (i/2) e^{-i pi w} (1 - e^{2 i pi w})
    return std::log(0.5) + i * (kPi / 2.0) - i * kPi * w + std::log(1.0 - std::exp(2.0 * i * kPi * w));
  }
  if (w.imag() < -1.0) {
    return std::log(0.5) - i * (kPi / 2.0) + i * kPi * w + std::log(1.0 - std::exp(-2.0 * i * kPi * w));
  }
  return std::log(std::sin(kPi * w));
}

cplx lanczos_log(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int k = 1; k < 9; ++k) x += kLanczos[k] / (z + static_cast<double>(k));
  cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(kTwoPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_pole(z)) throw Error(ErrorCode::GammaPole, "numerics", "gamma pole at z = " + std::to_string(z.real()));
  if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - lanczos_log(1.0 - z);
  return lanczos_log(z);
}

cplx gamma_complex(cplx z) {
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() <= 20.0 && z.real() == std::floor(z.real())) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(z.real()); ++k) f *= k;
    return f;
  }
  return std::exp(log_gamma(z));
}

}  // namespace microlift
