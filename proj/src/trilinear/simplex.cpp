#include <algorithm>
#include <cmath>

#include "trilinear/internal.hpp"
#include "trilinear/trilinear.hpp"

namespace microlift {

namespace {

struct Coeffs {
  int lo = 0, hi = -1;
  std::vector<cplx> c;
  int resolved = 0;  // highest frequency the node density must follow
  Coeffs(const CircleFunction& f, double trim_rel, double resolve_rel) {
    int bw = f.bandwidth(trim_rel);
    lo = std::max(f.k_lo(), -bw);
    hi = std::min(f.k_hi(), bw);
    for (int k = lo; k <= hi; ++k) c.push_back(f.coefficient(k));
    resolved = f.bandwidth(resolve_rel);
  }
  cplx operator[](int k) const { return (k < lo || k > hi) ? cplx(0.0) : c[static_cast<std::size_t>(k - lo)]; }
  int span() const { return std::max(std::abs(lo), std::abs(hi)); }
};

// fill e[n - lo] = exp(2 i n x) for n in [lo, hi]
void fill_exp(std::vector<cplx>& e, int lo, int hi, double x) {
  e.resize(static_cast<std::size_t>(hi - lo + 1));
  if (hi < lo) return;
  cplx step = std::polar(1.0, 2.0 * x);
  cplx v = std::polar(1.0, 2.0 * x * lo);
  for (int n = lo; n <= hi; ++n) {
    // re-anchor periodically to limit drift
    if ((n - lo) % 32 == 0) v = std::polar(1.0, 2.0 * x * n);
    e[static_cast<std::size_t>(n - lo)] = v;
    v *= step;
  }
}

// One simplex: outer variable a in (0, pi), inner b in (0, pi - a).
// `outer_c` is the exponent of |sin a|; the inner exponents are inner_l on b and
// inner_r on pi - a - b. The middle function cm is summed in the outer loop, ci in the inner loop.
cplx simplex_piece(const Coeffs& c1, const Coeffs& cm, const Coeffs& ci, cplx outer_c, cplx inner_l, cplx inner_r,
                   int depth, int order, std::int64_t& nodes) {
  double log_freq = std::max({std::abs(outer_c.imag()), std::abs(inner_l.imag()), std::abs(inner_r.imag()),
                              std::abs((inner_l + inner_r).imag())});
  double freq = 2.0 * std::max({cm.resolved, ci.resolved, c1.resolved}) + 1.0;
  const int max_depth = depth + 60;
  detail::GradedPanels outer_l(outer_c, depth, order, log_freq, freq * kPi);
  detail::GradedPanels outer_r(inner_l + inner_r + outer_c + 1.0, depth, order, log_freq, freq * kPi);
  detail::GradedPanels in_l(inner_l, max_depth, order, log_freq, freq * 0.5 * kPi);
  detail::GradedPanels in_r(inner_r, max_depth, order, log_freq, freq * 0.5 * kPi);

  const int ilo = ci.lo, ihi = ci.hi;
  std::vector<cplx> em, ei, R(static_cast<std::size_t>(std::max(0, ihi - ilo + 1)));
  cplx total = 0.0;
  auto inner_at = [&](double a, double ac) {
    fill_exp(em, cm.lo, cm.hi, a);
    for (int n3 = ilo; n3 <= ihi; ++n3) {
      cplx s = 0.0;
      for (int n2 = cm.lo; n2 <= cm.hi; ++n2)
        s += c1[-n2 - n3] * cm.c[static_cast<std::size_t>(n2 - cm.lo)] * em[static_cast<std::size_t>(n2 - cm.lo)];
      R[static_cast<std::size_t>(n3 - ilo)] = s * ci.c[static_cast<std::size_t>(n3 - ilo)];
    }
    fill_exp(ei, ilo, ihi, a);
    for (std::size_t j = 0; j < R.size(); ++j) R[j] *= ei[j];

    const double L = ac, h = 0.5 * L;
    cplx inner_sum = 0.0;
    auto node = [&](double b, double br, cplx w) {
      fill_exp(ei, ilo, ihi, b);
      cplx s = 0.0;
      for (std::size_t j = 0; j < R.size(); ++j) s += R[j] * ei[j];
      double sb = detail::sin_pair(b, br + a);
      double sc = detail::sin_pair(br, a + b);
      inner_sum += w * detail::pos_pow(sb, inner_l) * detail::pos_pow(sc, inner_r) * s;
    };
    nodes += in_l.visit(h, in_l.depth_for(depth, h, a), [&](double s, cplx w) { node(s, L - s, w); });
    nodes += in_r.visit(h, in_r.depth_for(depth, h, a), [&](double s, cplx w) { node(L - s, s, w); });
    return inner_sum;
  };
  auto at_outer = [&](double a, double ac, cplx wa) {
    total += wa * detail::pos_pow(detail::sin_pair(a, ac), outer_c) * inner_at(a, ac);
  };
  const double H = 0.5 * kPi;
  // near a = 0 the inner integral behaves like P + Q a^{inner_l + inner_r + 1}
  outer_l.visit(H, depth, [&](double s, cplx w) { at_outer(s, kPi - s, w); }, false);
  double eps = H * std::ldexp(1.0, -depth);
  total += detail::two_term_tail(eps, outer_c, inner_l + inner_r + 1.0, inner_at(eps, kPi - eps),
                                 inner_at(0.5 * eps, kPi - 0.5 * eps));
  outer_r.visit(H, depth, [&](double s, cplx w) { at_outer(kPi - s, s, w); });
  return total;
}

cplx l_mod_once(const Coeffs& c1, const Coeffs& c2, const Coeffs& c3, const TripleExponents& ex, int depth,
                int order, std::int64_t& nodes) {
  cplx A = ex.e23(), B = ex.e13(), C = ex.e12();
  // x < y < z pattern: u = y - x first, then w - u
  cplx t1 = simplex_piece(c1, c2, c3, C, A, B, depth, order, nodes);
  // x < z < y pattern
  cplx t2 = simplex_piece(c1, c3, c2, B, A, C, depth, order, nodes);
  return (t1 + t2) / (kPi * kPi);
}

}  // namespace

QuadValue l_mod(const CircleFunction& f1, const CircleFunction& f2, const CircleFunction& f3, cplx l1, cplx l2,
                cplx l3, const SimplexOptions& opts) {
  auto ex = TripleExponents::from_lambdas(l1, l2, l3);
  ex.check_direct_path();
  if (f1.size() != f2.size() || f1.size() != f3.size())
    throw Error(ErrorCode::GridMismatch, "trilinear", "l_mod inputs on different grids");
  Coeffs c1(f1, opts.trim_rel, opts.resolve_rel), c2(f2, opts.trim_rel, opts.resolve_rel),
      c3(f3, opts.trim_rel, opts.resolve_rel);
  QuadValue q;
  q.nodes_used = 0;
  q.value = l_mod_once(c1, c2, c3, ex, opts.depth, opts.order, q.nodes_used);
  if (opts.estimate_error) {
    cplx coarse = l_mod_once(c1, c2, c3, ex, opts.depth - 2, opts.order - 4, q.nodes_used);
    q.err_estimate = std::abs(q.value - coarse);
  }
  q.nodes_used = std::max<std::int64_t>(q.nodes_used, 1);
  return q;
}

}  // namespace microlift
