#include "pdo/pdo.hpp"

#include <algorithm>
#include <cmath>

#include "circle_model/representation.hpp"
#include "numerics/parallel.hpp"

namespace microlift {
namespace {

// position of x on a periodic grid of n cells over [0, 2pi)
std::pair<int, double> periodic_cell(double x, int n) {
  double u = x / kTwoPi * n;
  u -= std::floor(u / n) * n;
  int i = std::min(static_cast<int>(std::floor(u)), n - 1);
  return {i, u - i};
}

}  // namespace

Symbol Symbol::from_function(Fn fn) {
  if (!fn) throw Error(ErrorCode::InvalidArgument, "pdo", "empty symbol");
  Symbol s;
  s.fn_ = std::move(fn);
  return s;
}

Symbol Symbol::constant(cplx c) {
  return from_function([c](DiskPoint, BoundaryPoint) { return c; });
}

Symbol Symbol::boundary_mode(int k) {
  return from_function([k](DiskPoint, BoundaryPoint b) { return std::exp(cplx(0.0, k * b.angle)); });
}

Symbol Symbol::tabulated(std::vector<double> radii, int n_theta, int n_b, std::vector<cplx> values) {
  const int n_r = static_cast<int>(radii.size());
  if (n_r < 1 || n_theta < 1 || n_b < 1)
    throw Error(ErrorCode::InvalidArgument, "pdo", "empty symbol table");
  if (!std::is_sorted(radii.begin(), radii.end()) || radii.front() < 0.0 || radii.back() >= 1.0)
    throw Error(ErrorCode::InvalidArgument, "pdo", "symbol radii must be sorted inside [0,1)");
  if (values.size() != static_cast<std::size_t>(n_r) * n_theta * n_b)
    throw Error(ErrorCode::GridMismatch, "pdo", "symbol table size does not match its grid");
  auto at = [=, v = std::move(values)](int i, int j, int l) {
    return v[(static_cast<std::size_t>(i) * n_theta + j) * n_b + l];
  };
  return from_function([=](DiskPoint z, BoundaryPoint b) {
    double r = std::abs(z.z);
    int i0 = 0;
    double fr = 0.0;
    if (r >= radii.back()) {
      i0 = n_r - 1;
    } else if (r > radii.front()) {
      i0 = static_cast<int>(std::upper_bound(radii.begin(), radii.end(), r) - radii.begin()) - 1;
      fr = (r - radii[i0]) / (radii[i0 + 1] - radii[i0]);
    }
    int i1 = std::min(i0 + 1, n_r - 1);
    auto [j0, ft] = periodic_cell(std::arg(z.z), n_theta);
    auto [l0, fb] = periodic_cell(b.angle, n_b);
    int j1 = (j0 + 1) % n_theta, l1 = (l0 + 1) % n_b;
    auto in_b = [&](int i, int j) { return (1.0 - fb) * at(i, j, l0) + fb * at(i, j, l1); };
    auto in_t = [&](int i) { return (1.0 - ft) * in_b(i, j0) + ft * in_b(i, j1); };
    return (1.0 - fr) * in_t(i0) + fr * in_t(i1);
  });
}

double Symbol::sup_norm(const std::vector<DiskPoint>& zs, int n_b) const {
  double m = 0.0;
  for (const auto& z : zs)
    for (int l = 0; l < n_b; ++l) m = std::max(m, std::abs(fn_(z, BoundaryPoint::make(kTwoPi * l / n_b))));
  return m;
}

cplx op_apply(const Symbol& a, cplx lambda, const CircleFunction& density, DiskPoint z) {
  const std::size_t n = density.size();
  cplx s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    BoundaryPoint b = BoundaryPoint::make(2.0 * density.theta(j));
    s += density.samples()[j] * a(z, b) * plane_wave(lambda, z, b);
  }
  return s / static_cast<double>(n);
}

cplx op_apply(const Symbol& a, cplx lambda, const std::vector<WeightedDelta>& deltas, DiskPoint z) {
  cplx s = 0.0;
  for (const auto& d : deltas) s += d.weight * a(z, d.b) * plane_wave(lambda, z, d.b);
  return s;
}

SymbolRoundTrip symbol_roundtrip(const Symbol& a, cplx lambda, DiskPoint z, BoundaryPoint b) {
  SymbolRoundTrip r;
  r.applied = op_apply(a, lambda, std::vector<WeightedDelta>{{b, 1.0}}, z);
  r.reconstructed = r.applied / plane_wave(lambda, z, b);
  return r;
}

QuadValue microlocal_pairing(const CircleFunction& v_a, cplx mu, cplx lambda, const DeltaOptions& opts) {
  return l_mod_delta(v_a, mu, lambda, opts);
}

FlowReport flow_comparison(const CircleFunction& v_a, cplx mu, double s, const std::vector<double>& ts, int threads,
                           const DeltaOptions& opts) {
  if (ts.size() < 2) throw Error(ErrorCode::InvalidArgument, "pdo", "flow comparison needs at least two t values");
  CircleFunction moved = v_a - pi_act(mu, GroupElement::diagonal(s), v_a);
  FlowReport rep;
  rep.rows = parallel_map(2 * ts.size(), threads, [&](std::size_t i) {
    FlowRow row;
    row.t = ts[i / 2];
    const CircleFunction& f = i % 2 == 0 ? v_a : moved;
    (i % 2 == 0 ? row.base : row.shifted) = microlocal_pairing(f, mu, cplx(0.0, row.t), opts);
    return row;
  });
  std::vector<FlowRow> merged;
  std::vector<double> yb, ys;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    FlowRow row{ts[k], rep.rows[2 * k].base, rep.rows[2 * k + 1].shifted};
    yb.push_back(std::abs(row.base.value));
    ys.push_back(std::abs(row.shifted.value));
    merged.push_back(row);
  }
  rep.rows = std::move(merged);
  rep.base_slope = fit_loglog_slope(ts, yb);
  rep.shifted_slope = fit_loglog_slope(ts, ys);
  rep.sobolev2 = sobolev_norm(v_a, 2);
  return rep;
}

}  // namespace microlift
