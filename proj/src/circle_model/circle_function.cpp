#include "circle_model/circle_function.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace microlift {
namespace {

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// Planning is not thread safe in FFTW; execution on fresh aligned arrays is.
fftw_plan plan_for(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto key = std::make_pair(n, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE);
  fftw_free(in);
  fftw_free(out);
  plans.emplace(key, p);
  return p;
}

std::vector<cplx> dft(const std::vector<cplx>& x, int sign) {
  const std::size_t n = x.size();
  auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  for (std::size_t j = 0; j < n; ++j) {
    in[j][0] = x[j].real();
    in[j][1] = x[j].imag();
  }
  fftw_execute_dft(plan_for(n, sign), in, out);
  std::vector<cplx> y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = cplx(out[j][0], out[j][1]);
  fftw_free(in);
  fftw_free(out);
  return y;
}

void check_size(std::size_t n) {
  if (n < 8 || n % 4 != 0)
    throw Error(ErrorCode::InvalidArgument, "circle_model", "grid size must be a multiple of 4 and at least 8");
}

}  // namespace

CircleFunction CircleFunction::from_samples(std::vector<cplx> samples) {
  const std::size_t n = samples.size();
  check_size(n);
  CircleFunction f;
  double total = 0.0, odd = 0.0;
  std::vector<cplx> even(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx a = samples[j], b = samples[(j + n / 2) % n];
    even[j] = 0.5 * (a + b);
    total += std::norm(a);
    odd += std::norm(0.5 * (a - b));
  }
  f.odd_mass_ = total > 0 ? std::sqrt(odd / total) : 0.0;
  std::vector<cplx> c = dft(even, FFTW_FORWARD);
  const int q = static_cast<int>(n / 4);
  f.coeffs_.assign(2 * q + 1, 0.0);
  for (int k = -q; k < q; ++k) {
    long m = 2L * k;
    f.coeffs_[k + q] = c[static_cast<std::size_t>((m % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n))] / static_cast<double>(n);
  }
  f.samples_ = std::move(even);
  f.finish_from_coeffs();
  return f;
}

CircleFunction CircleFunction::from_fourier(std::size_t n, const std::vector<std::pair<int, cplx>>& coeffs) {
  check_size(n);
  const int q = static_cast<int>(n / 4);
  CircleFunction f;
  f.coeffs_.assign(2 * q + 1, 0.0);
  std::vector<cplx> spec(n, 0.0);
  for (const auto& [k, c] : coeffs) {
    if (k < -q || k >= q) throw Error(ErrorCode::Resolution, "circle_model", "frequency beyond grid resolution");
    f.coeffs_[k + q] += c;
    long m = 2L * k;
    spec[static_cast<std::size_t>((m % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n))] += c;
  }
  f.samples_ = dft(spec, FFTW_BACKWARD);
  f.finish_from_coeffs();
  return f;
}

CircleFunction CircleFunction::from_function(std::size_t n, const std::function<cplx(double)>& fn) {
  check_size(n);
  std::vector<cplx> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = fn(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
  return from_samples(std::move(s));
}

CircleFunction CircleFunction::zero(std::size_t n) { return from_fourier(n, {}); }

void CircleFunction::finish_from_coeffs() {
  const int q = max_k();
  double big = 0.0;
  for (const auto& c : coeffs_) big = std::max(big, std::abs(c));
  // FFT round-off sits near 1e-17 of the peak; keep evaluation off that floor
  double cut = 1e-15 * big;
  k_lo_ = 0;
  k_hi_ = -1;
  for (int k = -q; k <= q; ++k)
    if (std::abs(coeffs_[k + q]) > cut) {
      k_lo_ = k;
      break;
    }
  for (int k = q; k >= -q; --k)
    if (std::abs(coeffs_[k + q]) > cut) {
      k_hi_ = k;
      break;
    }
  if (k_hi_ < k_lo_) k_lo_ = k_hi_ = 0;
}

cplx CircleFunction::coefficient(int k) const {
  const int q = max_k();
  if (k < -q || k > q) return 0.0;
  return coeffs_[k + q];
}

int CircleFunction::bandwidth(double rel) const {
  double big = 0.0;
  for (const auto& c : coeffs_) big = std::max(big, std::abs(c));
  int bw = 0;
  const int q = max_k();
  for (int k = -q; k <= q; ++k)
    if (std::abs(coeffs_[k + q]) > rel * big) bw = std::max(bw, std::abs(k));
  return bw;
}

cplx CircleFunction::operator()(double theta) const {
  const int q = max_k();
  cplx step = std::exp(cplx(0.0, 2.0 * theta));
  cplx e = std::exp(cplx(0.0, 2.0 * k_lo_ * theta));
  cplx acc = 0.0;
  for (int k = k_lo_; k <= k_hi_; ++k) {
    acc += coeffs_[k + q] * e;
    e *= step;
  }
  return acc;
}

double CircleFunction::tail_mass() const {
  const int q = max_k();
  double total = 0.0, tail = 0.0;
  for (int k = -q; k <= q; ++k) {
    double e = std::norm(coeffs_[k + q]);
    total += e;
    if (std::abs(k) > q - q / 8) tail += e;
  }
  return total > 0 ? std::sqrt(tail / total) : 0.0;
}

void CircleFunction::check_grid(const CircleFunction& o) const {
  if (o.size() != size()) throw Error(ErrorCode::GridMismatch, "circle_model", "circle functions live on different grids");
}

CircleFunction CircleFunction::conj() const {
  std::vector<cplx> s(samples_);
  for (auto& v : s) v = std::conj(v);
  return from_samples(std::move(s));
}

CircleFunction CircleFunction::operator+(const CircleFunction& o) const {
  check_grid(o);
  std::vector<cplx> s(size());
  for (std::size_t j = 0; j < size(); ++j) s[j] = samples_[j] + o.samples_[j];
  return from_samples(std::move(s));
}

CircleFunction CircleFunction::operator-(const CircleFunction& o) const { return *this + o * cplx(-1.0); }

CircleFunction CircleFunction::operator*(cplx s) const {
  std::vector<cplx> v(samples_);
  for (auto& x : v) x *= s;
  return from_samples(std::move(v));
}

CircleFunction CircleFunction::rotated(double shift) const {
  std::vector<std::pair<int, cplx>> c;
  for (int k = k_lo_; k <= k_hi_; ++k)
    c.emplace_back(k, coefficient(k) * std::exp(cplx(0.0, 2.0 * k * shift)));
  return from_fourier(size(), c);
}

void CircleFunction::write_csv(const std::string& path, bool fourier) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "circle_model", "cannot write " + path);
  out.precision(17);
  if (fourier) {
    out << "# circle function, coefficients of e^{i2k theta}, N=" << size() << "\n";
    out << "k,re_c,im_c\n";
    for (int k = -max_k(); k < max_k(); ++k) {
      cplx c = coefficient(k);
      if (c != cplx(0.0)) out << k << ',' << c.real() << ',' << c.imag() << '\n';
    }
  } else {
    out << "# circle function samples, theta_j = 2 pi j / N, N=" << size() << "\n";
    out << "theta,re,im\n";
    for (std::size_t j = 0; j < size(); ++j)
      out << theta(j) << ',' << samples_[j].real() << ',' << samples_[j].imag() << '\n';
  }
}

CircleFunction CircleFunction::read_csv(const std::string& path, std::size_t n_if_fourier) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "circle_model", "cannot read " + path);
  std::string line, header;
  std::vector<std::array<double, 3>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header.empty()) {
      header = line;
      continue;
    }
    std::array<double, 3> r{};
    std::stringstream ss(line);
    std::string cell;
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(ss, cell, ','))
        throw Error(ErrorCode::Parse, "circle_model", "short row in " + path);
      try {
        r[c] = std::stod(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "circle_model", "bad number '" + cell + "' in " + path);
      }
    }
    rows.push_back(r);
  }
  if (header.rfind("theta", 0) == 0) {
    std::vector<cplx> s;
    for (const auto& r : rows) s.emplace_back(r[1], r[2]);
    return from_samples(std::move(s));
  }
  if (header.rfind("k", 0) == 0) {
    std::vector<std::pair<int, cplx>> c;
    for (const auto& r : rows) c.emplace_back(static_cast<int>(r[0]), cplx(r[1], r[2]));
    return from_fourier(n_if_fourier, c);
  }
  throw Error(ErrorCode::Parse, "circle_model", "unknown header '" + header + "' in " + path);
}

}  // namespace microlift
