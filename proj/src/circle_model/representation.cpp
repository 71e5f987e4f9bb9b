#include "circle_model/representation.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "numerics/gamma.hpp"

namespace microlift {

CircleFunction pi_act(cplx lambda, const GroupElement& g, const CircleFunction& f, ActPath path) {
  const std::size_t n = f.size();
  const GroupElement gi = g.inverse();
  std::vector<cplx> s(n);
  for (std::size_t j = 0; j < n; ++j) {
    double th = f.theta(j);
    if (path == ActPath::Plane) {
      double x = std::cos(th), y = std::sin(th);
      double u = gi(0, 0) * x + gi(0, 1) * y;
      double w = gi(1, 0) * x + gi(1, 1) * y;
      double rho = std::hypot(u, w);
      s[j] = std::exp((lambda - 1.0) * std::log(rho)) * f(std::atan2(w, u));
    } else {
      BoundaryImage img = boundary_act(gi, BoundaryPoint::make(2.0 * th));
      s[j] = f(0.5 * img.point.angle) * std::exp(0.5 * (1.0 - lambda) * std::log(img.deriv));
    }
  }
  return CircleFunction::from_samples(std::move(s));
}

cplx inner_product(const CircleFunction& f, const CircleFunction& h) {
  if (f.size() != h.size()) throw Error(ErrorCode::GridMismatch, "circle_model", "inner product of mismatched grids");
  cplx acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += f.samples()[j] * std::conj(h.samples()[j]);
  return acc / static_cast<double>(f.size());
}

QuadValue d_mu_numerator(cplx mu, const std::function<cplx(double)>& v) {
  cplx s = (-mu - 1.0) / 2.0;
  if (s.real() <= -1.0)
    throw Error(ErrorCode::ExponentOutOfRange, "circle_model", "d_mu kernel exponent has Re <= -1");
  // |sin 2x| = 2 |sin x| |sin(x - pi/2)|; period pi in x
  cplx pre = std::exp(s * std::log(2.0)) / kPi;
  QuadValue q = integrate_singular([&](double x) { return v(x); }, {{0.0, s}, {0.5 * kPi, s}}, 0.0, kPi);
  q.value *= pre;
  q.err_estimate *= std::abs(pre);
  return q;
}

cplx d_mu(cplx mu, const CircleFunction& v) {
  QuadValue num = d_mu_numerator(mu, [&](double x) { return v(x); });
  QuadValue den = d_mu_numerator(mu, [](double) { return cplx(1.0); });
  return num.value / den.value;
}

cplx c_mu_closed(cplx mu) {
  cplx g = gamma_complex(0.75 - mu / 4.0);
  return std::exp((-0.5 + mu / 2.0) * std::log(2.0)) * gamma_complex(0.5 - mu / 2.0) / (g * g);
}

QuadValue c_mu_quadrature(cplx mu) {
  return d_mu_numerator(mu, [](double) { return cplx(1.0); });
}

double sobolev_norm(const CircleFunction& f, int order) {
  double acc = 0.0;
  for (int k = -f.max_k(); k <= f.max_k(); ++k) {
    double c = std::norm(f.coefficient(k));
    if (c == 0.0) continue;
    acc += std::pow(1.0 + 4.0 * k * k, order) * c;
  }
  return std::sqrt(acc);
}

namespace {

double chi_raw(double s) {
  double u = 4.0 * s / kPi;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

double chi_norm() {
  static const double norm = [] {
    QuadValue q = integrate_adaptive([](double s) { return cplx(chi_raw(s) * chi_raw(s)); }, -kPi / 4, kPi / 4,
                                     AdaptiveOptions{1e-14, 1e-300, 4'000'000});
    return std::sqrt(q.value.real());
  }();
  return norm;
}

}  // namespace

double default_chi(double s) { return chi_raw(s) / chi_norm(); }

CircleFunction bump_family(double r, std::size_t n, const std::function<double(double)>& chi) {
  if (!(r >= 1.0)) throw Error(ErrorCode::InvalidArgument, "circle_model", "bump scale r must be >= 1");
  if (r > static_cast<double>(n) / 32.0)
    throw Error(ErrorCode::Resolution, "circle_model", "bump scale r too large for grid size");
  return CircleFunction::from_function(n, [&](double t) { return cplx(bump_value(r, t, chi)); });
}

double bump_value(double r, double t, const std::function<double(double)>& chi) {
  double u = std::remainder(t, kPi);              // distance to the bump at 0
  double w = std::remainder(t - 0.5 * kPi, kPi);  // distance to the bump at pi/2
  return std::sqrt(0.5 * kPi * r) * (chi(r * u) + chi(r * w));
}

CircleFunction named_function(const std::string& name, std::size_t n) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  std::string p;
  while (std::getline(ss, p, ':')) parts.push_back(p);
  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw Error(ErrorCode::Parse, "circle_model", "missing argument in '" + name + "'");
    try {
      return std::stod(parts[i]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Parse, "circle_model", "bad argument in '" + name + "'");
    }
  };
  if (parts.empty()) throw Error(ErrorCode::Parse, "circle_model", "empty function name");
  const std::string& kind = parts[0];
  if (kind == "e0") return CircleFunction::from_fourier(n, {{0, 1.0}});
  if (kind == "e") return CircleFunction::from_fourier(n, {{static_cast<int>(num(1)), 1.0}});
  if (kind == "one_plus_cos4") return CircleFunction::from_fourier(n, {{0, 1.0}, {2, 0.5}, {-2, 0.5}});
  if (kind == "vonmises") {
    double c = num(1), kappa = num(2);
    return CircleFunction::from_function(n, [=](double t) { return cplx(std::exp(kappa * (std::cos(2.0 * (t - c)) - 1.0))); });
  }
  if (kind == "bump") return bump_family(num(1), n);
  if (kind == "zero") return CircleFunction::zero(n);
  throw Error(ErrorCode::Parse, "circle_model", "unknown function '" + name + "'");
}

}  // namespace microlift
