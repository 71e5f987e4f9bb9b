#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace microlift {

// Even (period pi) function on the circle: samples at theta_j = 2 pi j / N and
// the matching coefficients c_k of e^{i 2k theta}, |k| <= N/4.
class CircleFunction {
 public:
  static CircleFunction from_samples(std::vector<cplx> samples);
  static CircleFunction from_fourier(std::size_t n, const std::vector<std::pair<int, cplx>>& coeffs);
  static CircleFunction from_function(std::size_t n, const std::function<cplx(double)>& f);
  static CircleFunction zero(std::size_t n);

  std::size_t size() const { return samples_.size(); }
  double theta(std::size_t j) const { return kTwoPi * static_cast<double>(j) / static_cast<double>(size()); }
  const std::vector<cplx>& samples() const { return samples_; }
  cplx coefficient(int k) const;
  int max_k() const { return static_cast<int>(size() / 4); }
  // trimmed coefficient range [k_lo, k_hi]
  int k_lo() const { return k_lo_; }
  int k_hi() const { return k_hi_; }
  // largest |k| carrying more than rel of the largest coefficient
  int bandwidth(double rel = 1e-14) const;

  cplx operator()(double theta) const;
  // energy fraction removed by the evenness projection
  double odd_mass() const { return odd_mass_; }
  // energy fraction in the top eighth of the frequency range
  double tail_mass() const;

  CircleFunction conj() const;
  CircleFunction operator+(const CircleFunction& o) const;
  CircleFunction operator-(const CircleFunction& o) const;
  CircleFunction operator*(cplx s) const;
  // f(theta + shift)
  CircleFunction rotated(double shift) const;

  void write_csv(const std::string& path, bool fourier) const;
  static CircleFunction read_csv(const std::string& path, std::size_t n_if_fourier = 4096);

 private:
  void check_grid(const CircleFunction& o) const;
  void finish_from_coeffs();
  std::vector<cplx> samples_;
  std::vector<cplx> coeffs_;  // index k + N/4
  int k_lo_ = 0, k_hi_ = 0;
  double odd_mass_ = 0.0;
};

}  // namespace microlift
