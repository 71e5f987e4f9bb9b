#include <algorithm>
#include <cmath>

#include "circle_model/representation.hpp"
#include "numerics/gamma.hpp"
#include "numerics/parallel.hpp"
#include "trilinear/trilinear.hpp"

namespace microlift {

cplx ramanujan_value(int k) {
  if (k < 1 || k % 2 == 0) throw Error(ErrorCode::InvalidArgument, "trilinear", "Ramanujan index must be odd");
  double kk = k;
  cplx phase = std::polar(1.0, -kPi * (kk + 1.0) / 4.0);
  return phase * std::pow(2.0, 0.5 - 0.5 * kk) * gamma_complex(0.5 + 0.5 * kk) /
         (gamma_complex(1.0 + 0.5 * kk) * gamma_complex(0.5));
}

RamanujanCheck ramanujan_check(int k) {
  RamanujanCheck r{ramanujan_value(k), {}};
  double s = 0.5 * (k - 1);
  // |sin 2x|^s = 2^s |sin x|^s |sin(x - pi/2)|^s; [0, 2pi] is twice [0, pi]
  double pre = std::pow(2.0, s) / kPi;
  r.quadrature = integrate_singular([&](double x) { return pre * std::polar(1.0, -(1.0 + k) * x); },
                                    {{0.0, s}, {0.5 * kPi, s}}, 0.0, kPi);
  return r;
}

QuadValue stationary_weight(const CircleFunction& v, cplx mu) {
  QuadValue q = d_mu_numerator(mu, [&](double x) { return v(x); });
  // |sin x cos x|^s = 2^{-s} |sin 2x|^s
  cplx f = std::exp(-((-mu - 1.0) / 2.0) * std::log(2.0));
  q.value *= f;
  q.err_estimate *= std::abs(f);
  return q;
}

cplx stationary_phase_prediction(const CircleFunction& v, cplx mu, double t, double sp_norm) {
  cplx amp = sp_norm * stationary_weight(v, mu).value;
  // phase -log|sin z| has p'' = 1 and p = 0 at z = +-pi/2
  return stationary_phase_leading({{amp, 1.0, 0.0}, {amp, 1.0, 0.0}}, t);
}

double fit_loglog_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  if (n < 2 || y.size() != n) throw Error(ErrorCode::InvalidArgument, "trilinear", "slope fit needs two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double lx = std::log(t[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

AsymptoticsReport sweep_asymptotics(const CircleFunction& v, cplx mu, const std::vector<double>& ts, double sp_norm,
                                    int threads, const DeltaOptions& opts) {
  if (ts.empty()) throw Error(ErrorCode::InvalidArgument, "trilinear", "empty t sweep");
  for (double t : ts)
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "trilinear", "sweep values must be positive");
  AsymptoticsReport rep;
  rep.rows = parallel_map(ts.size(), threads, [&](std::size_t i) {
    double t = ts[i];
    AsymptoticsRow row;
    row.t = t;
    row.value = l_mod_delta(v, mu, cplx(0.0, t), opts);
    row.abs_scaled = std::abs(row.value.value) * std::sqrt(t);
    row.predictor = stationary_phase_prediction(v, mu, t, sp_norm);
    row.rel_gap = std::abs(row.predictor) > 0.0 ? std::abs(row.value.value - row.predictor) / std::abs(row.predictor)
                                                 : std::abs(row.value.value);
    return row;
  });
  if (ts.size() >= 2) {
    std::vector<double> y;
    for (const auto& r : rep.rows) y.push_back(std::abs(r.value.value));
    bool positive = std::all_of(y.begin(), y.end(), [](double a) { return a > 0.0; });
    rep.fitted_exponent = positive ? fit_loglog_slope(ts, y) : 0.0;
  }
  return rep;
}

std::vector<LocalizationRow> localization_scan(const CircleFunction& a, cplx mu, double t_i,
                                               const std::vector<double>& offsets, int threads,
                                               const DeltaOptions& opts) {
  if (!(t_i > 0.0)) throw Error(ErrorCode::InvalidArgument, "trilinear", "t_i must be positive");
  return parallel_map(offsets.size(), threads, [&](std::size_t i) {
    LocalizationRow row;
    row.offset = offsets[i];
    row.value = l_mod_delta_mixed(a, mu, cplx(0.0, t_i), cplx(0.0, t_i + offsets[i]), opts);
    row.abs_scaled = std::abs(row.value.value) * std::sqrt(t_i);
    return row;
  });
}

namespace {

// z in [0, pi] with (z + y) inside one of the bumps, as intervals
std::vector<std::pair<double, double>> bump_support(double y, double w) {
  std::vector<std::pair<double, double>> out;
  for (double c : {0.0, 0.5 * kPi}) {
    double p = c - w - y;
    double k = std::floor(p / kPi);
    p -= k * kPi;
    double q = p + 2.0 * w;
    if (q > kPi) {
      out.push_back({p, kPi});
      out.push_back({0.0, q - kPi});
    } else {
      out.push_back({p, q});
    }
  }
  // intervals that nearly touch an end are anchored there; the extra piece carries zero weight
  for (auto& [p, q] : out) {
    if (p < 0.5 * (q - p)) p = 0.0;
    if (kPi - q < 0.5 * (q - p)) q = kPi;
  }
  return out;
}

}  // namespace

QuadValue l_mod_bump_pair(const CircleFunction& v, cplx mu, cplx lambda, double r, int threads,
                          const DeltaOptions& opts) {
  if (!(r >= 2.0)) throw Error(ErrorCode::InvalidArgument, "trilinear", "bump scale r must be >= 2");
  auto ex = TripleExponents::from_lambdas(mu, lambda, lambda);
  if (ex.e13().real() <= -1.0 || ex.e12().real() <= -1.0)
    throw Error(ErrorCode::ExponentOutOfRange, "trilinear", "inner kernel exponent with Re <= -1");
  const double w = bump_half_width(r);
  // y nodes: both bumps, each split in panels of Gauss-Legendre
  const int panels = 2;
  const GaussRule& g = gauss_legendre(16);
  std::vector<std::pair<double, double>> ys;
  for (double c : {0.0, 0.5 * kPi})
    for (int p = 0; p < panels; ++p) {
      double lo = c - w + 2.0 * w * p / panels, hi = c - w + 2.0 * w * (p + 1) / panels;
      for (std::size_t i = 0; i < g.x.size(); ++i)
        ys.push_back({0.5 * (lo + hi) + 0.5 * (hi - lo) * g.x[i], 0.5 * (hi - lo) * g.w[i]});
    }
  const double x_freq = 2.0 * v.bandwidth(1e-15) + 1.0;
  auto parts = parallel_map(ys.size(), threads, [&](std::size_t i) {
    double y = ys[i].first;
    DeltaProblem p;
    p.x_fn = [&v](double x) { return v(x); };
    p.x_freq = x_freq;
    p.z_fn = [r](double z) { return cplx(bump_value(r, z)); };
    p.z_freq = 16.0 * r;
    p.a_out = ex.e23();
    p.b_xz = ex.e13();
    p.b_x = ex.e12();
    p.shift = y;
    p.z_support = bump_support(y, w);
    QuadValue q = delta_slot_integral(p, opts);
    double f2 = bump_value(r, y) * ys[i].second / kPi;
    q.value *= f2;
    q.err_estimate *= std::abs(f2);
    return q;
  });
  QuadValue total;
  total.nodes_used = 0;
  for (const auto& q : parts) {
    total.value += q.value;
    total.err_estimate += q.err_estimate;
    total.nodes_used += q.nodes_used;
  }
  total.nodes_used = std::max<std::int64_t>(1, total.nodes_used);
  return total;
}

RhoResult rho_comparison(const CircleFunction& v, cplx mu, cplx lambda, double r, int threads,
                         const DeltaOptions& opts) {
  RhoResult res;
  res.lhs = l_mod_delta(v, mu, lambda, opts);
  res.rhs = l_mod_bump_pair(v, mu, lambda, r, threads, opts);
  res.gap = std::abs(res.lhs.value - res.rhs.value);
  return res;
}

}  // namespace microlift
