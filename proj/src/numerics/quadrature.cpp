#include "numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <queue>

namespace microlift {
namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a, b;
  cplx value;
  double err;
};

Interval kronrod(const RealFn& f, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx fc = f(c);
  cplx resk = kWgk[7] * fc;
  cplx resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double dx = h * kXgk[j];
    cplx s = f(c - dx) + f(c + dx);
    resk += kWgk[j] * s;
    if (j % 2 == 1) resg += kWg[(j - 1) / 2] * s;
  }
  return {a, b, resk * h, std::abs((resk - resg) * h)};
}

struct ByError {
  bool operator()(const Interval& x, const Interval& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.a > y.a;
  }
};

cplx spow(double x, cplx s) { return std::exp(s * std::log(x)); }

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "numerics", "Gauss order must be positive");
  auto rule = std::make_unique<GaussRule>();
  rule->x.resize(n);
  rule->w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule->x[i] = -x;
    rule->x[n - 1 - i] = x;
    rule->w[i] = w;
    rule->w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule->x[n / 2] = 0.0;
  auto& ref = *rule;
  cache.emplace(n, std::move(rule));
  return ref;
}

QuadValue integrate_adaptive(const RealFn& f, const std::vector<double>& breaks, const AdaptiveOptions& opts) {
  if (breaks.size() < 2) throw Error(ErrorCode::InvalidArgument, "numerics", "need at least one interval");
  std::priority_queue<Interval, std::vector<Interval>, ByError> heap;
  std::vector<Interval> done;
  std::int64_t nodes = 0;
  cplx total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Interval iv = kronrod(f, breaks[i], breaks[i + 1]);
    nodes += 15;
    total += iv.value;
    total_err += iv.err;
    heap.push(iv);
  }
  auto finish = [&]() {
    while (!heap.empty()) {
      done.push_back(heap.top());
      heap.pop();
    }
    std::sort(done.begin(), done.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
    QuadValue q;
    double err = 0.0;
    for (const auto& iv : done) {
      q.value += iv.value;
      err += iv.err;
    }
    q.err_estimate = err;
    q.nodes_used = std::max<std::int64_t>(nodes, 1);
    return q;
  };
  while (!heap.empty()) {
    if (total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) break;
    if (nodes + 30 > opts.max_nodes) {
      QuadValue best = finish();
      throw BudgetExceeded("numerics", "adaptive quadrature node budget exhausted", best);
    }
    Interval iv = heap.top();
    heap.pop();
    double mid = 0.5 * (iv.a + iv.b);
    if (!(mid > iv.a && mid < iv.b) || iv.b - iv.a < 1e-15 * std::max(1.0, std::abs(iv.a))) {
      done.push_back(iv);
      total_err -= iv.err;
      continue;
    }
    Interval l = kronrod(f, iv.a, mid), r = kronrod(f, mid, iv.b);
    nodes += 30;
    total += l.value + r.value - iv.value;
    total_err += l.err + r.err - iv.err;
    heap.push(l);
    heap.push(r);
  }
  return finish();
}

QuadValue integrate_adaptive(const RealFn& f, double a, double b, const AdaptiveOptions& opts) {
  return integrate_adaptive(f, std::vector<double>{a, b}, opts);
}

QuadValue integrate_real_line(const RealFn& f, const AdaptiveOptions& opts) {
  RealFn g = [&f](double x) {
    double d = 1.0 - x * x;
    double u = x / d;
    return f(u) * ((1.0 + x * x) / (d * d));
  };
  return integrate_adaptive(g, std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0}, opts);
}

std::vector<GradedNode> graded_rule(const GradedSpec& spec) {
  std::vector<GradedNode> nodes;
  const double L = spec.length;
  auto order_for = [&](double phase) {
    return spec.order + static_cast<int>(std::ceil(phase * 12.0 / kTwoPi));
  };
  // panel given in offsets [lo,hi] from the left (fromRight=false) or right end
  auto add_panel = [&](double lo, double hi, bool from_right, double phase) {
    const GaussRule& g = gauss_legendre(order_for(phase));
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      double s = c + h * g.x[i];
      if (from_right)
        nodes.push_back({L - s, s, g.w[i] * h});
      else
        nodes.push_back({s, L - s, g.w[i] * h});
    }
  };
  auto add_graded = [&](double span, bool from_right, cplx exponent) {
    double hi = span;
    for (int k = 0; k < spec.depth; ++k) {
      double lo = 0.5 * hi;
      add_panel(lo, hi, from_right, spec.log_freq * std::log(2.0) + spec.lin_freq * (hi - lo));
      hi = lo;
    }
    cplx denom = exponent + 1.0;
    cplx w = std::abs(denom) > 1e-12 ? hi / denom : cplx(hi);
    if (from_right)
      nodes.push_back({L - hi, hi, w});
    else
      nodes.push_back({hi, L - hi, w});
  };
  if (spec.left_singular && spec.right_singular) {
    add_graded(0.5 * L, false, spec.left_exp);
    add_graded(0.5 * L, true, spec.right_exp);
  } else if (spec.left_singular) {
    add_graded(L, false, spec.left_exp);
  } else if (spec.right_singular) {
    add_graded(L, true, spec.right_exp);
  } else {
    int panels = std::max(1, static_cast<int>(std::ceil(spec.lin_freq * L / kTwoPi)));
    for (int p = 0; p < panels; ++p)
      add_panel(L * p / panels, L * (p + 1) / panels, false, spec.lin_freq * L / panels);
  }
  return nodes;
}

QuadValue integrate_singular(const RealFn& cofactor, const std::vector<SingularFactor>& factors, double a,
                             double b, const SingularOptions& opts) {
  if (!(b > a)) throw Error(ErrorCode::InvalidArgument, "numerics", "integrate_singular needs a < b");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    double re = factors[i].exponent.real();
    bool continuation = re <= -1.0;
    if (re <= -3.0 || (continuation && (factors[i].exponent == cplx(-1.0) || factors[i].exponent == cplx(-2.0))))
      throw Error(ErrorCode::ExponentOutOfRange, "numerics", "exponent outside the admissible range");
    if (continuation && opts.path == SingularPath::Graded)
      throw Error(ErrorCode::ExponentOutOfRange, "numerics", "graded path needs Re(s) > -1");
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      double d = std::fmod(std::abs(factors[i].location - factors[j].location), kPi);
      if (std::min(d, kPi - d) < 1e-12)
        throw Error(ErrorCode::OverlappingSingularities, "numerics", "singular locations coincide modulo pi");
    }
  }

  struct Point {
    double u;
    std::size_t factor;
  };
  std::vector<Point> points;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    if (factors[j].exponent == cplx(0.0)) continue;
    double u0 = factors[j].location;
    long m0 = static_cast<long>(std::ceil((a - u0) / kPi - 1e-12));
    for (long m = m0;; ++m) {
      double u = u0 + m * kPi;
      if (u > b + 1e-12 * (1.0 + std::abs(b))) break;
      points.push_back({std::clamp(u, a, b), j});
    }
  }
  std::sort(points.begin(), points.end(), [](const Point& x, const Point& y) { return x.u < y.u; });

  auto full = [&](double u) {
    cplx v = cofactor(u);
    for (const auto& fj : factors) {
      if (fj.exponent == cplx(0.0)) continue;
      v *= spow(std::abs(std::sin(u - fj.location)), fj.exponent);
    }
    return v;
  };

  std::vector<double> breaks{a};
  for (const auto& p : points)
    if (p.u > a && p.u < b) breaks.push_back(p.u);
  breaks.push_back(b);
  double min_gap = b - a;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) min_gap = std::min(min_gap, breaks[i + 1] - breaks[i]);
  const double delta = std::min(0.5, 0.25 * min_gap);

  double scale = 0.0;
  for (int i = 0; i < 16; ++i) {
    double u = a + (b - a) * (i + 0.5) / 16.0;
    scale = std::max(scale, std::abs(full(u)));
  }
  scale = std::max(scale * (b - a), 1e-300);
  AdaptiveOptions aopts;
  aopts.rel_tol = opts.tol;
  aopts.abs_tol = opts.tol * scale * 1e-3;

  QuadValue total;
  total.nodes_used = 0;
  auto accumulate = [&](const QuadValue& q) {
    total.value += q.value;
    total.err_estimate += q.err_estimate;
    total.nodes_used += q.nodes_used;
  };

  auto local = [&](const Point& p, int side) {
    const cplx s = factors[p.factor].exponent;
    auto phi = [&](double v) {
      double u = p.u + side * v;
      cplx val = cofactor(u);
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i == p.factor || factors[i].exponent == cplx(0.0)) continue;
        val *= spow(std::abs(std::sin(u - factors[i].location)), factors[i].exponent);
      }
      return val;
    };
    auto f_loc = [&](double v) { return spow(std::abs(std::sin(v)), s) * phi(v); };
    QuadValue q;
    q.nodes_used = 0;
    if (opts.path == SingularPath::Subtraction) {
      // three terms always; only the coefficients with Re(s)+j <= -1 have to be exact
      const int m = 3;
      const double h = std::min(0.05, 0.25 * delta);
      cplx p0 = phi(0.0);
      auto d1 = [&](double hh) { return (phi(hh) - phi(-hh)) / (2.0 * hh); };
      auto d2 = [&](double hh) { return (phi(hh) - 2.0 * p0 + phi(-hh)) / (hh * hh); };
      cplx p1 = (4.0 * d1(0.5 * h) - d1(h)) / 3.0;
      cplx p2 = (4.0 * d2(0.5 * h) - d2(h)) / 3.0;
      cplx psi[3] = {p0, p1, p2 - s * p0 / 3.0};
      double fact[3] = {1.0, 1.0, 2.0};
      for (int j = 0; j < m; ++j) q.value += psi[j] / fact[j] * spow(delta, s + (j + 1.0)) / (s + (j + 1.0));
      auto rem = [&](double v) {
        cplx poly = psi[0];
        double vj = v;
        for (int j = 1; j < m; ++j, vj *= v) poly += psi[j] / fact[j] * vj;
        return f_loc(v) - spow(v, s) * poly;
      };
      // remainder ~ v^{s+m}; go down until the neglected piece is below 1e-13 and
      // accept the roundoff floor of f_loc - v^s T at the smallest scale
      int kmax = 40;
      if (s.real() < -1.0) {
        double vstar = std::cbrt(64.0 * 2.2e-16);
        kmax = std::clamp(static_cast<int>(std::lround(std::log2(delta / vstar))), 8, 40);
      }
      std::vector<double> br;
      if (s.real() > -1.0) br.push_back(0.0);
      for (int k = kmax; k >= 0; --k) br.push_back(std::ldexp(delta, -k));
      AdaptiveOptions ropts = aopts;
      double vmin = std::ldexp(delta, -kmax);
      double floor = 2.2e-16 * (1.0 + std::abs(s) * std::abs(std::log(vmin))) * std::abs(p0) *
                     std::pow(vmin, s.real() + 1.0) / std::max(0.1, std::abs(s.real() + 1.0));
      ropts.abs_tol = std::max(aopts.abs_tol, 256.0 * floor);
      ropts.max_nodes = 200'000;
      QuadValue r;
      try {
        r = integrate_adaptive(rem, br, ropts);
      } catch (const BudgetExceeded& e) {
        r = e.best();  // roundoff-limited; keep the estimate and its error
      }
      q.value += r.value;
      q.err_estimate = r.err_estimate;
      q.nodes_used = r.nodes_used + 9;
    } else {
      auto run = [&](int order) {
        const GaussRule& g = gauss_legendre(order);
        // first panel by its leading power, the rest by Gauss on the graded mesh
        double v1 = delta * std::pow(1.0 / opts.graded_m, 4);
        cplx acc = f_loc(v1) * v1 / (s + 1.0);
        for (int j = 1; j < opts.graded_m; ++j) {
          double lo = delta * std::pow(static_cast<double>(j) / opts.graded_m, 4);
          double hi = delta * std::pow(static_cast<double>(j + 1) / opts.graded_m, 4);
          double c = 0.5 * (lo + hi), hh = 0.5 * (hi - lo);
          for (std::size_t i = 0; i < g.x.size(); ++i) acc += g.w[i] * hh * f_loc(c + hh * g.x[i]);
        }
        return acc;
      };
      cplx fine = run(opts.graded_order + 4);
      cplx coarse = run(opts.graded_order);
      q.value = fine;
      q.err_estimate = std::abs(fine - coarse);
      q.nodes_used = static_cast<std::int64_t>(opts.graded_m) * (2 * opts.graded_order + 4);
    }
    return q;
  };

  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double l = breaks[i], r = breaks[i + 1];
    const Point* pl = nullptr;
    const Point* pr = nullptr;
    for (const auto& p : points) {
      if (p.u == l && !pl) pl = &p;
      if (p.u == r && !pr) pr = &p;
    }
    double lo = l, hi = r;
    if (pl) {
      accumulate(local(*pl, +1));
      lo = l + delta;
    }
    if (pr) {
      accumulate(local(*pr, -1));
      hi = r - delta;
    }
    if (hi > lo) accumulate(integrate_adaptive(full, lo, hi, aopts));
  }
  total.nodes_used = std::max<std::int64_t>(total.nodes_used, 1);
  return total;
}

cplx stationary_phase_leading(const std::vector<CriticalPoint>& points, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "numerics", "stationary phase needs t > 0");
  cplx sum = 0.0;
  for (const auto& cp : points) {
    if (cp.p_second == 0.0) throw Error(ErrorCode::InvalidArgument, "numerics", "degenerate critical point");
    double sgn = cp.p_second > 0 ? 1.0 : -1.0;
    sum += std::sqrt(kTwoPi / (t * std::abs(cp.p_second))) *
           std::exp(cplx(0.0, t * cp.p_value + 0.25 * kPi * sgn)) * cp.amplitude;
  }
  return sum;
}

}  // namespace microlift
