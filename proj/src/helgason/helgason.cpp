#include "helgason/helgason.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "numerics/quadrature.hpp"

namespace microlift {

namespace {

void check_grid(double r_max, int n_r, int n_theta) {
  if (!(r_max > 0.0 && r_max < 1.0))
    throw Error(ErrorCode::InvalidArgument, "helgason", "r_max must lie in (0, 1)");
  if (n_r < 1 || n_theta < 4) throw Error(ErrorCode::InvalidArgument, "helgason", "disk grid too small");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "helgason", "cannot write " + path);
  out << std::setprecision(17);
  return out;
}

}  // namespace

void DiskField::build_grid() {
  const GaussRule& g = gauss_legendre(n_r_);
  r_.resize(static_cast<std::size_t>(n_r_));
  vw_.resize(static_cast<std::size_t>(n_r_));
  for (int i = 0; i < n_r_; ++i) {
    double r = 0.5 * r_max_ * (1.0 + g.x[static_cast<std::size_t>(i)]);
    double wr = 0.5 * r_max_ * g.w[static_cast<std::size_t>(i)];
    r_[static_cast<std::size_t>(i)] = r;
    vw_[static_cast<std::size_t>(i)] = wr * (kTwoPi / n_theta_) * 4.0 * r / std::pow(1.0 - r * r, 2);
  }
}

DiskField DiskField::sample(double r_max, int n_r, int n_theta, const std::function<cplx(cplx)>& f) {
  check_grid(r_max, n_r, n_theta);
  DiskField d;
  d.r_max_ = r_max;
  d.n_r_ = n_r;
  d.n_theta_ = n_theta;
  d.build_grid();
  d.values_.resize(static_cast<std::size_t>(n_r) * static_cast<std::size_t>(n_theta));
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_theta; ++j) d.values_[static_cast<std::size_t>(i * n_theta + j)] = f(d.point(i, j));
  return d;
}

DiskField DiskField::from_values(double r_max, int n_r, int n_theta, std::vector<cplx> values) {
  check_grid(r_max, n_r, n_theta);
  if (values.size() != static_cast<std::size_t>(n_r) * static_cast<std::size_t>(n_theta))
    throw Error(ErrorCode::GridMismatch, "helgason", "value count does not match the disk grid");
  DiskField d;
  d.r_max_ = r_max;
  d.n_r_ = n_r;
  d.n_theta_ = n_theta;
  d.build_grid();
  d.values_ = std::move(values);
  return d;
}

double DiskField::l2_norm_sq() const {
  double s = 0.0;
  for (int i = 0; i < n_r_; ++i)
    for (int j = 0; j < n_theta_; ++j) s += volume_weight(i) * std::norm(value(i, j));
  return s;
}

double DiskField::edge_ratio() const {
  double big = 0.0, edge = 0.0;
  for (int i = 0; i < n_r_; ++i)
    for (int j = 0; j < n_theta_; ++j) {
      double a = std::abs(value(i, j));
      big = std::max(big, a);
      if (i == n_r_ - 1) edge = std::max(edge, a);
    }
  return big > 0.0 ? edge / big : 0.0;
}

double DiskField::angular_tail() const {
  double worst = 0.0;
  const int n = n_theta_;
  std::vector<cplx> tw(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) tw[static_cast<std::size_t>(j)] = std::polar(1.0, -kTwoPi * j / n);
  for (int i = 0; i < n_r_; ++i) {
    double total = 0.0, tail = 0.0;
    for (int k = 0; k < n; ++k) {
      cplx c = 0.0;
      for (int j = 0; j < n; ++j) c += value(i, j) * tw[static_cast<std::size_t>((static_cast<long>(k) * j) % n)];
      int kk = k <= n / 2 ? k : n - k;
      total += std::norm(c);
      if (kk > 3 * n / 8) tail += std::norm(c);
    }
    if (total > 0.0) worst = std::max(worst, std::sqrt(tail / total));
  }
  return worst;
}

void DiskField::write_csv(const std::string& path) const {
  auto out = open_out(path);
  out << "# disk field; r_max=" << r_max_ << " n_r=" << n_r_ << " n_theta=" << n_theta_
      << "; curvature -1, dvol = 4 r dr dtheta/(1-r^2)^2\n";
  out << "r,theta,re,im\n";
  for (int i = 0; i < n_r_; ++i)
    for (int j = 0; j < n_theta_; ++j)
      out << radius(i) << ',' << angle(j) << ',' << value(i, j).real() << ',' << value(i, j).imag() << '\n';
}

DiskField DiskField::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "helgason", "cannot read " + path);
  std::string line;
  double r_max = 0.0;
  int n_r = 0, n_theta = 0;
  std::vector<cplx> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto grab = [&](const std::string& key, auto& dst) {
        auto p = line.find(key + "=");
        if (p != std::string::npos) std::stringstream(line.substr(p + key.size() + 1)) >> dst;
      };
      grab("r_max", r_max);
      grab("n_r", n_r);
      grab("n_theta", n_theta);
      continue;
    }
    if (line.rfind("r,", 0) == 0) continue;
    auto cells = split_csv(line);
    if (cells.size() != 4) throw Error(ErrorCode::Parse, "helgason", "disk field rows need 4 columns");
    try {
      vals.push_back({std::stod(cells[2]), std::stod(cells[3])});
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "helgason", "bad number in " + path);
    }
  }
  return from_values(r_max, n_r, n_theta, std::move(vals));
}

double BoundarySpectralField::t_weight(int k) const {
  const double h = t_max / n_t;
  // Gregory end corrections on t_0..t_n
  static const double c[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
  int from_end = n_t - k;
  double w = 1.0;
  if (k < 3) w = c[k];
  if (from_end < 3) w = c[from_end];
  return w * h;
}

void BoundarySpectralField::write_csv(const std::string& path) const {
  auto out = open_out(path);
  out << "# boundary spectral field; t_max=" << t_max << " n_t=" << n_t << " n_b=" << n_b
      << "; lambda = i t, boundary angle b\n";
  out << "t,b,re,im\n";
  for (int k = 1; k <= n_t; ++k)
    for (int l = 0; l < n_b; ++l) out << t(k) << ',' << b(l) << ',' << at(k, l).real() << ',' << at(k, l).imag() << '\n';
}

BoundarySpectralField BoundarySpectralField::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "helgason", "cannot read " + path);
  BoundarySpectralField F;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto grab = [&](const std::string& key, auto& dst) {
        auto p = line.find(key + "=");
        if (p != std::string::npos) std::stringstream(line.substr(p + key.size() + 1)) >> dst;
      };
      grab("t_max", F.t_max);
      grab("n_t", F.n_t);
      grab("n_b", F.n_b);
      continue;
    }
    if (line.rfind("t,", 0) == 0) continue;
    auto cells = split_csv(line);
    if (cells.size() != 4) throw Error(ErrorCode::Parse, "helgason", "spectral rows need 4 columns");
    try {
      F.values.push_back({std::stod(cells[2]), std::stod(cells[3])});
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "helgason", "bad number in " + path);
    }
  }
  if (F.n_t < 1 || F.n_b < 1 || F.values.size() != static_cast<std::size_t>(F.n_t) * static_cast<std::size_t>(F.n_b))
    throw Error(ErrorCode::GridMismatch, "helgason", "spectral field size does not match its header");
  return F;
}

cplx poisson_transform(cplx lambda, const CircleFunction& density, DiskPoint z) {
  const std::size_t n = density.size();
  cplx s = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    s += density.samples()[j] * plane_wave(lambda, z, BoundaryPoint::make(2.0 * density.theta(j)));
  return s / static_cast<double>(n);
}

cplx poisson_transform(cplx lambda, const std::vector<WeightedDelta>& deltas, DiskPoint z) {
  cplx s = 0.0;
  for (const auto& d : deltas) s += d.weight * plane_wave(lambda, z, d.b);
  return s;
}

cplx helgason_fourier(const DiskField& f, double t, BoundaryPoint b) {
  const cplx e = 0.5 * cplx(1.0, -t);
  cplx s = 0.0;
  for (int i = 0; i < f.n_r(); ++i) {
    cplx ring = 0.0;
    for (int j = 0; j < f.n_theta(); ++j)
      ring += f.value(i, j) * std::exp(e * horocycle_bracket(DiskPoint{f.point(i, j)}, b));
    s += f.volume_weight(i) * ring;
  }
  return s;
}

BoundarySpectralField helgason_fourier_field(const DiskField& f, double t_max, int n_t, int n_b) {
  if (!(t_max > 0.0) || n_t < 4 || n_b < 4)
    throw Error(ErrorCode::InvalidArgument, "helgason", "spectral grid too small");
  BoundarySpectralField F;
  F.t_max = t_max;
  F.n_t = n_t;
  F.n_b = n_b;
  F.values.assign(static_cast<std::size_t>(n_t) * static_cast<std::size_t>(n_b), 0.0);
  const double h = t_max / n_t;
  std::vector<cplx> acc(static_cast<std::size_t>(n_t));
  for (int l = 0; l < n_b; ++l) {
    BoundaryPoint b = BoundaryPoint::make(F.b(l));
    std::fill(acc.begin(), acc.end(), cplx(0.0));
    for (int i = 0; i < f.n_r(); ++i)
      for (int j = 0; j < f.n_theta(); ++j) {
        cplx v = f.value(i, j);
        if (v == cplx(0.0)) continue;
        double L = horocycle_bracket(DiskPoint{f.point(i, j)}, b);
        cplx step = std::polar(1.0, -0.5 * h * L);
        cplx e = f.volume_weight(i) * v * std::exp(0.5 * L) * step;
        for (int k = 0; k < n_t; ++k) {
          acc[static_cast<std::size_t>(k)] += e;
          e *= step;
        }
      }
    for (int k = 0; k < n_t; ++k) F.values[static_cast<std::size_t>(k * n_b + l)] = acc[static_cast<std::size_t>(k)];
  }
  return F;
}

cplx helgason_inverse(const BoundarySpectralField& F, DiskPoint z, double c_p) {
  const double h = F.t_max / F.n_t;
  cplx s = 0.0;
  for (int l = 0; l < F.n_b; ++l) {
    double L = horocycle_bracket(z, BoundaryPoint::make(F.b(l)));
    cplx step = std::polar(1.0, 0.5 * h * L);
    cplx e = std::exp(0.5 * L) * step;
    cplx ring = 0.0;
    for (int k = 1; k <= F.n_t; ++k) {
      double t = F.t(k);
      ring += F.t_weight(k) * t * std::tanh(0.5 * kPi * t) * e * F.at(k, l);
      e *= step;
    }
    s += ring;
  }
  return c_p * s * (kTwoPi / F.n_b);
}

DiskField helgason_inverse_field(const BoundarySpectralField& F, double r_max, int n_r, int n_theta, double c_p) {
  return DiskField::sample(r_max, n_r, n_theta, [&](cplx z) { return helgason_inverse(F, DiskPoint{z}, c_p); });
}

double spectral_energy(const BoundarySpectralField& F) {
  double s = 0.0;
  for (int k = 1; k <= F.n_t; ++k) {
    double t = F.t(k), w = F.t_weight(k) * t * std::tanh(0.5 * kPi * t);
    for (int l = 0; l < F.n_b; ++l) s += w * std::norm(F.at(k, l));
  }
  return s * (kTwoPi / F.n_b);
}

double spectral_tail(const BoundarySpectralField& F) {
  double total = 0.0, tail = 0.0;
  for (int k = 1; k <= F.n_t; ++k) {
    double t = F.t(k), w = F.t_weight(k) * t * std::tanh(0.5 * kPi * t);
    for (int l = 0; l < F.n_b; ++l) {
      double e = w * std::norm(F.at(k, l));
      total += e;
      if (k > F.n_t - F.n_t / 10) tail += e;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

cplx reference_bump(cplx z) {
  const cplx z0(0.15, 0.1);
  const double sigma = 0.35;
  double rho = 2.0 * std::atanh(std::abs(z - z0) / std::abs(1.0 - std::conj(z0) * z));
  return std::exp(-rho * rho / (2.0 * sigma * sigma));
}

RoundTrip helgason_roundtrip(const std::function<cplx(cplx)>& f, double t_max, double c_p, const HelgasonGrids& g) {
  DiskField src = DiskField::sample(g.r_max, g.n_r, g.n_theta, f);
  BoundarySpectralField F = helgason_fourier_field(src, t_max, g.n_t, g.n_b);
  DiskField truth = DiskField::sample(g.r_max, g.rec_r, g.rec_theta, f);
  DiskField rec = helgason_inverse_field(F, g.r_max, g.rec_r, g.rec_theta, 1.0);
  cplx num = 0.0;
  double den = 0.0;
  for (int i = 0; i < truth.n_r(); ++i)
    for (int j = 0; j < truth.n_theta(); ++j) {
      num += truth.volume_weight(i) * truth.value(i, j) * std::conj(rec.value(i, j));
      den += truth.volume_weight(i) * std::norm(rec.value(i, j));
    }
  RoundTrip out;
  out.t_max = t_max;
  out.c_p_fit = den > 0.0 ? num.real() / den : 0.0;
  out.c_p = c_p > 0.0 ? c_p : out.c_p_fit;
  double err = 0.0, ref = 0.0;
  for (int i = 0; i < truth.n_r(); ++i)
    for (int j = 0; j < truth.n_theta(); ++j) {
      err += truth.volume_weight(i) * std::norm(truth.value(i, j) - out.c_p * rec.value(i, j));
      ref += truth.volume_weight(i) * std::norm(truth.value(i, j));
    }
  out.l2_rel_err = ref > 0.0 ? std::sqrt(err / ref) : 0.0;
  double norm = src.l2_norm_sq();
  out.plancherel_gap = norm > 0.0 ? std::abs(out.c_p * spectral_energy(F) - norm) / norm : 0.0;
  out.spectral_tail = spectral_tail(F);
  return out;
}

}  // namespace microlift
