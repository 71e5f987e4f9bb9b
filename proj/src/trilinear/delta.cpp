#include <algorithm>
#include <cmath>

#include "numerics/chebyshev.hpp"
#include "trilinear/internal.hpp"
#include "trilinear/trilinear.hpp"

namespace microlift {

using detail::pos_pow;
using detail::sin_pair;

namespace {

// Psi(z) = int_0^pi v(x+shift) |sin x|^{b_x} |sin(x-z)|^{b_xz} dx, split into four
// halves each graded toward its own singular end.
class PsiEval {
 public:
  PsiEval(const DeltaProblem& p, const DeltaOptions& o) : p_(p), base_(o.inner_depth) {
    double log_freq = std::max(std::abs(p.b_x.imag()), std::abs(p.b_xz.imag()));
    const int max_depth = o.inner_depth + 60;
    rule_x_ = detail::GradedPanels(p.b_x, max_depth, o.inner_order, log_freq, p.x_freq * 0.5 * kPi);
    rule_xz_ = detail::GradedPanels(p.b_xz, max_depth, o.inner_order, log_freq, p.x_freq * 0.5 * kPi);
    GradedSpec s;
    s.length = kPi;
    s.left_singular = s.right_singular = true;
    s.left_exp = s.right_exp = p.b_x + p.b_xz;
    s.depth = o.inner_depth;
    s.order = o.inner_order;
    s.log_freq = log_freq;
    s.lin_freq = p.x_freq;
    rule_0_ = graded_rule(s);
  }

  cplx v(double x) const { return p_.x_fn(x + p_.shift); }

  // Segment [0,z] has the mirror singularity of the other factor at distance zc
  // beyond its ends, segment [z,pi] at distance z; grade deeper accordingly.
  cplx operator()(double z, double zc) const {
    cplx sum = 0.0;
    const cplx bx = p_.b_x, bxz = p_.b_xz;
    double h = 0.5 * z;
    int d = rule_x_.depth_for(base_, h, zc);
    evals_ += rule_x_.visit(h, d, [&](double s, cplx w) {
      sum += w * v(s) * pos_pow(std::sin(s), bx) * pos_pow(sin_pair(z - s, zc + s), bxz);
    });
    evals_ += rule_xz_.visit(h, d, [&](double s, cplx w) {
      sum += w * v(z - s) * pos_pow(sin_pair(z - s, zc + s), bx) * pos_pow(std::sin(s), bxz);
    });
    h = 0.5 * zc;
    d = rule_x_.depth_for(base_, h, z);
    evals_ += rule_xz_.visit(h, d, [&](double s, cplx w) {
      sum += w * v(z + s) * pos_pow(sin_pair(z + s, zc - s), bx) * pos_pow(std::sin(s), bxz);
    });
    evals_ += rule_x_.visit(h, d, [&](double s, cplx w) {
      sum += w * v(kPi - s) * pos_pow(std::sin(s), bx) * pos_pow(sin_pair(zc - s, z + s), bxz);
    });
    return sum;
  }

  // z = 0 (equivalently pi): the two singular points merge
  cplx at_zero() const {
    evals_ += static_cast<std::int64_t>(rule_0_.size());
    cplx e = p_.b_x + p_.b_xz, sum = 0.0;
    for (const auto& n : rule_0_) sum += n.w * v(n.x) * pos_pow(sin_pair(n.x, n.xr), e);
    return sum;
  }

  std::int64_t evals() const { return evals_; }

 private:
  const DeltaProblem& p_;
  int base_;
  detail::GradedPanels rule_x_, rule_xz_;
  std::vector<GradedNode> rule_0_;
  mutable std::int64_t evals_ = 0;
};

enum class Anchor { None, Left, Right };

struct Local {
  Anchor anchor;
  double z(double u) const { return anchor == Anchor::Right ? kPi - u : u; }
  double zc(double u) const { return anchor == Anchor::Right ? u : kPi - u; }
};

class OuterIntegrator {
 public:
  OuterIntegrator(const DeltaProblem& p, const DeltaOptions& o) : p_(p), o_(o), psi_(p, o) {}

  cplx w(double z) const { return p_.z_fn ? p_.z_fn(z + p_.shift) : cplx(1.0); }

  cplx psi_local(Local loc, double u) const { return psi_(loc.z(u), loc.zc(u)); }

  // outer weight |sin z|^a w(z) at local coordinate u
  cplx weight(Local loc, double u) const {
    double z = loc.z(u), zc = loc.zc(u);
    return pos_pow(sin_pair(z, zc), p_.a_out) * w(z);
  }

  void add_cheb_panels(Local loc, double lo, double hi, int level) {
    ChebPanel c(lo, hi, o_.cheb_n, [&](double u) { return psi_local(loc, u); });
    if (c.tail() > o_.cheb_tol && level < 10) {
      double mid = 0.5 * (lo + hi);
      add_cheb_panels(loc, lo, mid, level + 1);
      add_cheb_panels(loc, mid, hi, level + 1);
      return;
    }
    integrate_panel(loc, c);
  }

  void integrate_panel(Local loc, const ChebPanel& c) {
    double lo = c.lo(), hi = c.hi();
    double l1 = std::log(sin_pair(loc.z(lo), loc.zc(lo))), l2 = std::log(sin_pair(loc.z(hi), loc.zc(hi)));
    double phase = std::abs(p_.a_out.imag()) * std::abs(l2 - l1) + p_.z_freq * (hi - lo);
    int fine = o_.outer_order, coarse = o_.outer_order - 4;
    int nsub = std::max(1, static_cast<int>(std::ceil(12.0 * phase / (kTwoPi * coarse))));
    const GaussRule& gf = gauss_legendre(fine);
    const GaussRule& gc = gauss_legendre(coarse);
    double h = (hi - lo) / nsub;
    cplx vf = 0.0, vc = 0.0;
    for (int s = 0; s < nsub; ++s) {
      double a = lo + s * h, mid = a + 0.5 * h;
      for (std::size_t i = 0; i < gf.x.size(); ++i) {
        double u = mid + 0.5 * h * gf.x[i];
        vf += 0.5 * h * gf.w[i] * weight(loc, u) * c(u);
      }
      for (std::size_t i = 0; i < gc.x.size(); ++i) {
        double u = mid + 0.5 * h * gc.x[i];
        vc += 0.5 * h * gc.w[i] * weight(loc, u) * c(u);
      }
    }
    outer_nodes_ += nsub * (fine + coarse);
    total_ += vf;
    err_ += std::abs(vf - vc) + o_.cheb_tol * std::abs(vf);
  }

  // [0, eps] by the local model Psi ~ A u^p + B (or A log u + B)
  void add_tail(Local loc, double eps) {
    cplx w0 = w(loc.anchor == Anchor::Right ? kPi : 0.0);
    cplx tail = w0 * detail::two_term_tail(eps, p_.a_out, p_.b_x + p_.b_xz + 1.0, psi_local(loc, eps),
                                           psi_local(loc, 0.5 * eps));
    total_ += tail;
    err_ += 1e-3 * std::abs(tail);
  }

  // [0, W] when Re(a) <= -1: subtract the Taylor polynomial of the analytic cofactor
  void add_continuation(Local loc, double W) {
    cplx a = p_.a_out;
    auto psi_full = [&](double u) {
      double z = loc.z(u);
      double ratio = std::sin(u) / u;
      return pos_pow(ratio, a) * w(z) * psi_local(loc, u);
    };
    ChebPanel P(0.0, W, o_.cont_n, psi_full);
    std::vector<cplx> c = P.monomial();
    cplx acc = 0.0;
    double mag = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      cplx den = a + static_cast<double>(j) + 1.0;
      if (std::abs(den) < 1e-12)
        throw Error(ErrorCode::ExponentOutOfRange, "trilinear", "continuation hits a pole of the outer exponent");
      acc += c[j] / den;
      mag = std::max(mag, std::abs(c[j] / den));
    }
    cplx scale = std::pow(cplx(W), a + 1.0);
    total_ += scale * acc;
    outer_nodes_ += o_.cont_n;
    err_ += std::abs(scale) * (P.tail() * std::abs(P(W)) + 1e-14 * mag);
  }

  void anchored_segment(Anchor anc, double span) {
    Local loc{anc};
    bool cont = p_.a_out.real() <= -1.0;
    if (cont) {
      if (!p_.analytic_psi)
        throw Error(ErrorCode::RegularizationRequired, "trilinear",
                    "outer exponent with Re <= -1 needs an analytic inner integral");
      double wmax = std::min(o_.cont_window, std::sqrt(6.0 / std::max(1.0, std::abs(p_.a_out.imag()))));
      double hi = span;
      while (hi > wmax) {
        add_cheb_panels(loc, 0.5 * hi, hi, 0);
        hi *= 0.5;
      }
      add_continuation(loc, hi);
      return;
    }
    double hi = span;
    for (int k = 0; k < o_.outer_depth; ++k) {
      add_cheb_panels(loc, 0.5 * hi, hi, 0);
      hi *= 0.5;
    }
    add_tail(loc, hi);
  }

  void interior_segment(double p, double q) {
    Local loc{Anchor::None};
    int pieces = std::max(1, static_cast<int>(std::ceil((q - p) / 0.25)));
    for (int i = 0; i < pieces; ++i)
      add_cheb_panels(loc, p + (q - p) * i / pieces, p + (q - p) * (i + 1) / pieces, 0);
  }

  QuadValue run() {
    std::vector<std::pair<double, double>> sup = p_.z_support;
    if (sup.empty()) sup.push_back({0.0, kPi});
    for (auto [p, q] : sup) {
      p = std::max(0.0, p);
      q = std::min(kPi, q);
      if (!(q > p)) continue;
      bool left = p <= 0.0, right = q >= kPi;
      if (left && right) {
        anchored_segment(Anchor::Left, 0.5 * kPi);
        anchored_segment(Anchor::Right, 0.5 * kPi);
      } else if (left) {
        anchored_segment(Anchor::Left, q);
      } else if (right) {
        anchored_segment(Anchor::Right, kPi - p);
      } else {
        interior_segment(p, q);
      }
    }
    const double norm = 1.0 / (kPi * kPi);
    QuadValue r;
    r.value = total_ * norm;
    r.err_estimate = err_ * norm;
    r.nodes_used = std::max<std::int64_t>(1, psi_.evals() + outer_nodes_);
    return r;
  }

 private:
  const DeltaProblem& p_;
  const DeltaOptions& o_;
  PsiEval psi_;
  cplx total_ = 0.0;
  double err_ = 0.0;
  std::int64_t outer_nodes_ = 0;
};

void check_inner(cplx b) {
  if (b.real() <= -1.0)
    throw Error(ErrorCode::ExponentOutOfRange, "trilinear", "inner kernel exponent with Re <= -1");
}

double freq_of(const CircleFunction& v) { return 2.0 * v.bandwidth(1e-15) + 1.0; }

bool is_zero(const CircleFunction& v) {
  for (const auto& s : v.samples())
    if (s != cplx(0.0)) return false;
  return true;
}

QuadValue generic_delta(const CircleFunction& v, cplx a_out, cplx b_xz, cplx b_x, bool analytic,
                        const DeltaOptions& opts) {
  check_inner(b_xz);
  check_inner(b_x);
  if (is_zero(v)) return {};
  DeltaProblem p;
  p.x_fn = [&v](double x) { return v(x); };
  p.x_freq = freq_of(v);
  p.a_out = a_out;
  p.b_xz = b_xz;
  p.b_x = b_x;
  p.analytic_psi = analytic;
  return delta_slot_integral(p, opts);
}

}  // namespace

QuadValue delta_slot_integral(const DeltaProblem& p, const DeltaOptions& opts) {
  if (!p.x_fn) throw Error(ErrorCode::InvalidArgument, "trilinear", "delta problem without x function");
  OuterIntegrator oi(p, opts);
  return oi.run();
}

QuadValue l_mod_delta(const CircleFunction& v, cplx mu, cplx lambda, const DeltaOptions& opts) {
  return l_mod_delta_mixed(v, mu, lambda, lambda, opts);
}

QuadValue l_mod_delta_mixed(const CircleFunction& v, cplx mu, cplx lambda2, cplx lambda3, const DeltaOptions& opts) {
  auto ex = TripleExponents::from_lambdas(mu, lambda2, lambda3);
  return generic_delta(v, ex.e23(), ex.e13(), ex.e12(), false, opts);
}

namespace {

QuadValue disc_at(const CircleFunction& v, cplx mu, cplx lambda, const DeltaOptions& opts) {
  cplx b = (-mu - 1.0) / 2.0;
  return generic_delta(v, -lambda + mu / 2.0 - 0.5, b, b, true, opts);
}

void check_k(int k) {
  if (k <= 1 || k % 2 == 0)
    throw Error(ErrorCode::InvalidArgument, "trilinear", "discrete series index must be odd and > 1");
}

}  // namespace

QuadValue l_mod_disc(const CircleFunction& v, int k, cplx lambda, const DeltaOptions& opts) {
  check_k(k);
  return disc_at(v, cplx(-k), lambda, opts);
}

QuadValue l_mod_disc_derivative(const CircleFunction& v, int k, cplx lambda, double h, const DeltaOptions& opts) {
  check_k(k);
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "trilinear", "step must be positive");
  QuadValue p = disc_at(v, cplx(-k + h), lambda, opts);
  QuadValue m = disc_at(v, cplx(-k - h), lambda, opts);
  QuadValue r;
  r.value = (p.value - m.value) / (2.0 * h);
  r.err_estimate = (p.err_estimate + m.err_estimate) / (2.0 * h);
  r.nodes_used = p.nodes_used + m.nodes_used;
  return r;
}

}  // namespace microlift
