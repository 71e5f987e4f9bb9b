// microlift command line: verification, sweeps and transforms over the C interface.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "microlift/microlift.h"

namespace {

using json = nlohmann::ordered_json;

constexpr double kPi = 3.14159265358979323846;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Complex {
  double re = 0.0, im = 0.0;
  ml_complex c() const { return {re, im}; }
};

// "2", "-1.5", "2i", "i", "0.5-3i", "1e-3+2i"
Complex parse_complex(const std::string& s) {
  static const std::regex full(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i)?\s*$)");
  static const std::regex imag_only(R"(^\s*([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i\s*$)");
  std::smatch m;
  Complex z;
  if (std::regex_match(s, m, imag_only)) {
    double v = m[2].matched ? std::stod(m[2]) : 1.0;
    z.im = m[1] == "-" ? -v : v;
    return z;
  }
  if (!s.empty() && std::regex_match(s, m, full) && (m[1].matched || m[2].matched)) {
    if (m[1].matched) z.re = std::stod(m[1]);
    if (m[2].matched) {
      double v = m[3].matched ? std::stod(m[3]) : 1.0;
      z.im = m[2] == "-" ? -v : v;
    }
    return z;
  }
  throw UsageError("cannot read complex number '" + s + "'");
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_complex(Complex z) {
  std::string s = fmt(z.re);
  s += (z.im < 0 || std::signbit(z.im)) ? "-" : "+";
  return s + fmt(std::abs(z.im)) + "i";
}

void check(int status) {
  if (status != ML_OK)
    throw ModuleError(std::string(ml_status_name(status)) + ": " + ml_last_error());
}

struct RunConfig {
  std::string command;
  std::string fn = "e0";
  std::string fn2 = "e0";
  std::string fn3 = "e0";
  std::string symbol = "one";
  Complex lambda{0.0, 20.0};
  Complex lambda2{0.0, 20.0};
  Complex lambda3{0.0, 20.0};
  Complex mu{0.0, 0.0};
  int k = 3;
  int grid_n = 4096;
  double tol = 0.0;
  std::vector<double> t_sweep{50, 100, 200, 400};
  double t_i = 200.0;
  double r = 0.0;
  std::vector<double> offsets{0, 5, -5, 30};
  double t_max = 40.0;
  double c_p = 0.0;
  double sp_norm = 0.0;
  double r_max = 0.9;
  int n_r = 8;
  int n_theta = 16;
  std::string mode = "delta";
  std::string only;
  std::string ledger;
  std::string date;
  std::string out_path = "-";
  int threads = 1;
  bool fast = false;
  std::uint64_t seed = 1;
};

json complex_json(Complex z) { return json::array({z.re, z.im}); }
Complex complex_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json to_json(const RunConfig& c) {
  return json{{"command", c.command}, {"fn", c.fn}, {"fn2", c.fn2}, {"fn3", c.fn3}, {"symbol", c.symbol},
              {"lambda", complex_json(c.lambda)}, {"lambda2", complex_json(c.lambda2)},
              {"lambda3", complex_json(c.lambda3)}, {"mu", complex_json(c.mu)}, {"k", c.k},
              {"grid_n", c.grid_n}, {"tol", c.tol}, {"t_sweep", c.t_sweep}, {"t_i", c.t_i}, {"r", c.r},
              {"offsets", c.offsets}, {"t_max", c.t_max}, {"c_p", c.c_p}, {"sp_norm", c.sp_norm},
              {"r_max", c.r_max}, {"n_r", c.n_r}, {"n_theta", c.n_theta}, {"mode", c.mode}, {"only", c.only},
              {"ledger", c.ledger}, {"date", c.date}, {"out_path", c.out_path}, {"threads", c.threads},
              {"fast", c.fast}, {"seed", c.seed}};
}

// fields present in j replace those in c, except the ones named in keep
void merge_json(RunConfig& c, const json& j, const std::set<std::string>& keep) {
  auto take = [&](const char* key, auto& field) {
    if (j.contains(key) && !keep.count(key)) j.at(key).get_to(field);
  };
  auto take_c = [&](const char* key, Complex& field) {
    if (j.contains(key) && !keep.count(key)) field = complex_from(j.at(key));
  };
  take("command", c.command);
  take("fn", c.fn);
  take("fn2", c.fn2);
  take("fn3", c.fn3);
  take("symbol", c.symbol);
  take_c("lambda", c.lambda);
  take_c("lambda2", c.lambda2);
  take_c("lambda3", c.lambda3);
  take_c("mu", c.mu);
  take("k", c.k);
  take("grid_n", c.grid_n);
  take("tol", c.tol);
  take("t_sweep", c.t_sweep);
  take("t_i", c.t_i);
  take("r", c.r);
  take("offsets", c.offsets);
  take("t_max", c.t_max);
  take("c_p", c.c_p);
  take("sp_norm", c.sp_norm);
  take("r_max", c.r_max);
  take("n_r", c.n_r);
  take("n_theta", c.n_theta);
  take("mode", c.mode);
  take("only", c.only);
  take("ledger", c.ledger);
  take("date", c.date);
  take("out_path", c.out_path);
  take("threads", c.threads);
  take("fast", c.fast);
  take("seed", c.seed);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

void validate(const RunConfig& c) {
  require(c.threads >= 1 && c.threads <= 256, "threads must be in [1, 256]");
  require(c.grid_n >= 8 && c.grid_n % 4 == 0, "grid_n must be a multiple of 4 and at least 8");
  require(c.tol >= 0.0, "tol must be nonnegative");
  const std::string& cmd = c.command;
  if (cmd == "sweep") {
    require(!c.t_sweep.empty(), "t list is empty");
    for (double t : c.t_sweep) require(t > 0.0, "sweep values of t must be positive");
  }
  if (cmd == "ramanujan") require(c.k > 1 && c.k % 2 == 1, "k must be odd and greater than 1");
  if (cmd == "trilinear") {
    require(c.mode == "delta" || c.mode == "triple" || c.mode == "disc", "mode must be delta, triple or disc");
    if (c.mode == "disc") require(c.k > 1 && c.k % 2 == 1, "k must be odd and greater than 1");
  }
  if (cmd == "localization") {
    require(c.t_i >= 50.0, "t_i must be at least 50");
    require(!c.offsets.empty(), "offset list is empty");
  }
  if (cmd == "rho_compare") {
    require(!c.t_sweep.empty(), "t list is empty");
    for (double t : c.t_sweep) {
      require(t > 0.0, "values of t must be positive");
      double r = c.r > 0.0 ? c.r : std::pow(t, 0.4);
      require(r >= 2.0 && r <= std::pow(t, 0.45) + 1e-12, "r must satisfy 2 <= r <= t^0.45");
    }
  }
  if (cmd == "fourier_roundtrip") require(c.t_max > 0.0, "t_max must be positive");
  if (cmd == "poisson" || cmd == "pdo_apply") {
    require(c.r_max > 0.0 && c.r_max < 1.0, "r_max must lie in (0, 1)");
    require(c.n_r >= 1 && c.n_theta >= 1, "grid sizes must be positive");
  }
}

struct Circle {
  ml_circle* p = nullptr;
  Circle() = default;
  Circle(const Circle&) = delete;
  Circle& operator=(const Circle&) = delete;
  ~Circle() { ml_circle_free(p); }
};

// a named function, or a CSV file when the name ends in .csv
void load_fn(const std::string& name, int n, Circle& out) {
  if (name.size() > 4 && name.substr(name.size() - 4) == ".csv")
    check(ml_circle_read_csv(name.c_str(), static_cast<size_t>(n), &out.p));
  else
    check(ml_circle_named(name.c_str(), static_cast<size_t>(n), &out.p));
}

std::string conventions(const RunConfig& c) {
  char* text = nullptr;
  check(ml_conventions(c.ledger.empty() ? nullptr : c.ledger.c_str(), &text));
  std::string s = text;
  ml_string_free(text);
  return s;
}

class Table {
 public:
  Table(const RunConfig& c, std::vector<std::string> cols) : cfg_(c), cols_(std::move(cols)) {}
  void note(const std::string& s) { notes_ += "# " + s + "\n"; }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) body_ += (i ? "," : "") + cells[i];
    body_ += "\n";
  }
  void emit() const {
    std::string s = conventions(cfg_) + notes_;
    for (std::size_t i = 0; i < cols_.size(); ++i) s += (i ? "," : "") + cols_[i];
    s += "\n" + body_;
    if (cfg_.out_path.empty() || cfg_.out_path == "-") {
      std::cout << s;
    } else {
      std::ofstream out(cfg_.out_path);
      if (!out) throw ModuleError("cannot write " + cfg_.out_path);
      out << s;
    }
  }

 private:
  const RunConfig& cfg_;
  std::vector<std::string> cols_;
  std::string notes_, body_;
};

std::vector<std::string> quad_cells(const ml_quad& q) {
  return {fmt(q.value.re), fmt(q.value.im), fmt(std::hypot(q.value.re, q.value.im)), fmt(q.err_estimate),
          std::to_string(q.nodes_used)};
}

const char* opt_cstr(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int cmd_verify(const RunConfig& c) {
  char* report = nullptr;
  int pass = 0;
  check(ml_verify(opt_cstr(c.only), c.threads, opt_cstr(c.ledger), &report, &pass));
  std::string s = report;
  ml_string_free(report);
  if (c.out_path.empty() || c.out_path == "-") {
    std::cout << s;
  } else {
    std::ofstream out(c.out_path);
    if (!out) throw ModuleError("cannot write " + c.out_path);
    out << s;
  }
  return pass ? 0 : 1;
}

int cmd_calibrate(const RunConfig& c) {
  require(!c.date.empty(), "calibrate needs --date");
  char* text = nullptr;
  check(ml_calibrate(opt_cstr(c.ledger), c.date.c_str(), c.threads, &text));
  std::cout << text;
  ml_string_free(text);
  return 0;
}

int cmd_sweep(const RunConfig& c) {
  Circle v;
  load_fn(c.fn, c.grid_n, v);
  std::vector<ml_sweep_row> rows(c.t_sweep.size());
  double slope = 0.0;
  check(ml_sweep_asymptotics(v.p, c.mu.c(), c.t_sweep.data(), c.t_sweep.size(), c.sp_norm, c.threads, rows.data(),
                             &slope));
  Table t(c, {"t", "re_value", "im_value", "abs_value", "abs_scaled", "predictor_re", "predictor_im", "rel_gap",
              "err_estimate", "nodes"});
  t.note("sweep of l_mod with delta slot, v=" + c.fn + ", mu=" + fmt_complex(c.mu) + ", lambda = i t, N=" +
         std::to_string(c.grid_n));
  t.note("abs_scaled = |value| t^{1/2}; fitted log-log exponent " + fmt(slope));
  for (const auto& r : rows)
    t.row({fmt(r.t), fmt(r.value.value.re), fmt(r.value.value.im), fmt(std::hypot(r.value.value.re, r.value.value.im)),
           fmt(r.abs_scaled), fmt(r.predictor.re), fmt(r.predictor.im), fmt(r.rel_gap), fmt(r.value.err_estimate),
           std::to_string(r.value.nodes_used)});
  t.emit();
  return 0;
}

int cmd_c_mu(const RunConfig& c) {
  ml_complex closed;
  ml_quad q;
  check(ml_c_mu(c.mu.c(), &closed, &q));
  Table t(c, {"mu", "closed_re", "closed_im", "quadrature_re", "quadrature_im", "kappa_re", "kappa_im", "err_estimate"});
  t.note("closed form 2^{mu/2-1/2} Gamma(1/2-mu/2)/Gamma(3/4-mu/4)^2; quadrature (1/2pi) int |sin 2x|^{-mu/2-1/2}");
  double den = closed.re * closed.re + closed.im * closed.im;
  double kr = (q.value.re * closed.re + q.value.im * closed.im) / den;
  double ki = (q.value.im * closed.re - q.value.re * closed.im) / den;
  t.row({fmt_complex(c.mu), fmt(closed.re), fmt(closed.im), fmt(q.value.re), fmt(q.value.im), fmt(kr), fmt(ki),
         fmt(q.err_estimate)});
  t.emit();
  return 0;
}

int cmd_ramanujan(const RunConfig& c) {
  ml_complex closed;
  ml_quad q;
  check(ml_ramanujan(c.k, &closed, &q));
  Table t(c, {"k", "closed_form", "quadrature", "abs_gap", "err_estimate"});
  t.note("(1/2pi) int_0^{2pi} |sin 2x|^{(k-1)/2} e^{-i (k+1) x} dx; values are real");
  t.row({std::to_string(c.k), fmt(closed.re), fmt(q.value.re),
         fmt(std::hypot(closed.re - q.value.re, closed.im - q.value.im)), fmt(q.err_estimate)});
  t.emit();
  return 0;
}

int cmd_trilinear(const RunConfig& c) {
  Circle v;
  load_fn(c.fn, c.grid_n, v);
  ml_quad q;
  Table t(c, {"mode", "re_value", "im_value", "abs_value", "err_estimate", "nodes"});
  if (c.mode == "triple") {
    Circle f2, f3;
    load_fn(c.fn2, c.grid_n, f2);
    load_fn(c.fn3, c.grid_n, f3);
    check(ml_l_mod(v.p, f2.p, f3.p, c.mu.c(), c.lambda2.c(), c.lambda3.c(), &q));
    t.note("l_mod(" + c.fn + ", " + c.fn2 + ", " + c.fn3 + ") at (" + fmt_complex(c.mu) + ", " +
           fmt_complex(c.lambda2) + ", " + fmt_complex(c.lambda3) + ")");
  } else if (c.mode == "disc") {
    check(ml_l_mod_disc(v.p, c.k, c.lambda.c(), &q));
    t.note("discrete series branch, mu = -" + std::to_string(c.k) + ", lambda=" + fmt_complex(c.lambda));
  } else {
    check(ml_l_mod_delta(v.p, c.mu.c(), c.lambda2.c(), c.lambda3.c(), &q));
    t.note("delta slot, v=" + c.fn + ", (mu, lambda2, lambda3) = (" + fmt_complex(c.mu) + ", " +
           fmt_complex(c.lambda2) + ", " + fmt_complex(c.lambda3) + ")");
  }
  auto cells = quad_cells(q);
  t.row({c.mode, cells[0], cells[1], cells[2], cells[3], cells[4]});
  t.emit();
  return 0;
}

// uniform polar grid r_i = r_max (i + 1/2) / n_r
template <class Fn>
void polar_grid(const RunConfig& c, Fn fn) {
  for (int i = 0; i < c.n_r; ++i)
    for (int j = 0; j < c.n_theta; ++j) {
      double r = c.r_max * (i + 0.5) / c.n_r, th = 2.0 * kPi * j / c.n_theta;
      fn(r, th, ml_complex{r * std::cos(th), r * std::sin(th)});
    }
}

int cmd_poisson(const RunConfig& c) {
  Circle f;
  load_fn(c.fn, c.grid_n, f);
  Table t(c, {"r", "theta", "re", "im"});
  t.note("Poisson transform of T(b) = f(b/2) db/2pi, f=" + c.fn + ", lambda=" + fmt_complex(c.lambda));
  polar_grid(c, [&](double r, double th, ml_complex z) {
    ml_complex v;
    check(ml_poisson(c.lambda.c(), f.p, z, &v));
    t.row({fmt(r), fmt(th), fmt(v.re), fmt(v.im)});
  });
  t.emit();
  return 0;
}

int cmd_fourier_roundtrip(const RunConfig& c) {
  ml_roundtrip r;
  check(ml_fourier_roundtrip(c.t_max, c.c_p, &r));
  Table t(c, {"t_max", "c_p", "c_p_fit", "l2_rel_err", "plancherel_gap", "spectral_tail"});
  t.note("reference bump exp(-rho(z,z0)^2/(2 sigma^2)), sigma=0.35, z0=0.15+0.1i; density c_P t tanh(pi t/2) dt db");
  t.row({fmt(r.t_max), fmt(r.c_p), fmt(r.c_p_fit), fmt(r.l2_rel_err), fmt(r.plancherel_gap), fmt(r.spectral_tail)});
  t.emit();
  return 0;
}

int cmd_pdo_apply(const RunConfig& c) {
  Circle f;
  load_fn(c.fn, c.grid_n, f);
  ml_symbol* a = nullptr;
  if (c.symbol == "one") {
    check(ml_symbol_constant({1.0, 0.0}, &a));
  } else if (c.symbol.rfind("mode:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(c.symbol.substr(5));
    } catch (const std::exception&) {
      throw UsageError("bad symbol '" + c.symbol + "'");
    }
    check(ml_symbol_boundary_mode(k, &a));
  } else if (c.symbol.rfind("const:", 0) == 0) {
    check(ml_symbol_constant(parse_complex(c.symbol.substr(6)).c(), &a));
  } else {
    throw UsageError("symbol must be one, mode:K or const:C");
  }
  std::unique_ptr<ml_symbol, void (*)(ml_symbol*)> hold(a, ml_symbol_free);
  Table t(c, {"r", "theta", "re", "im", "poisson_re", "poisson_im"});
  t.note("Op(a) on the eigenfunction with boundary data f=" + c.fn + ", symbol " + c.symbol + ", lambda=" +
         fmt_complex(c.lambda));
  polar_grid(c, [&](double r, double th, ml_complex z) {
    ml_complex v, p;
    check(ml_pdo_apply(a, c.lambda.c(), f.p, z, &v));
    check(ml_poisson(c.lambda.c(), f.p, z, &p));
    t.row({fmt(r), fmt(th), fmt(v.re), fmt(v.im), fmt(p.re), fmt(p.im)});
  });
  t.emit();
  return 0;
}

int cmd_localization(const RunConfig& c) {
  Circle a;
  load_fn(c.fn, c.grid_n, a);
  std::vector<ml_localization_row> rows(c.offsets.size());
  check(ml_localization(a.p, c.mu.c(), c.t_i, c.offsets.data(), c.offsets.size(), c.threads, c.tol, rows.data()));
  Table t(c, {"offset", "re_value", "im_value", "abs_value", "abs_scaled", "err_estimate", "nodes"});
  t.note("delta slot at i t_i, e_0 slot at i (t_i + offset), t_i=" + fmt(c.t_i) + ", a=" + c.fn + ", mu=" +
         fmt_complex(c.mu));
  for (const auto& r : rows) {
    auto q = quad_cells(r.value);
    t.row({fmt(r.offset), q[0], q[1], q[2], fmt(r.abs_scaled), q[3], q[4]});
  }
  t.emit();
  return 0;
}

int cmd_rho_compare(const RunConfig& c) {
  Circle v;
  load_fn(c.fn, c.grid_n, v);
  Table t(c, {"t", "r", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "gap", "gap_scaled", "rhs_err_estimate"});
  t.note("lhs = l_mod with delta slot; rhs = l_mod(v, v_r, v_r); v=" + c.fn + ", mu=" + fmt_complex(c.mu) +
         "; r = t^0.4 unless given");
  for (double tt : c.t_sweep) {
    double r = c.r > 0.0 ? c.r : std::pow(tt, 0.4);
    ml_rho res;
    check(ml_rho_compare(v.p, c.mu.c(), tt, r, c.threads, &res));
    t.row({fmt(tt), fmt(r), fmt(res.lhs.value.re), fmt(res.lhs.value.im), fmt(res.rhs.value.re),
           fmt(res.rhs.value.im), fmt(res.gap), fmt(res.gap * std::sqrt(tt)), fmt(res.rhs.err_estimate)});
  }
  t.emit();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"microlift: model-side trilinear functionals, Helgason transforms and symbol calculus"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_in, config_out, lambda_s, lambda2_s, lambda3_s, mu_s;
  std::string t_list, offsets_list;

  std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> bound;

  auto add = [&](CLI::App* s, const std::string& key, CLI::Option* o) { bound[s->get_name()].push_back({key, o}); };
  auto common = [&](CLI::App* s) {
    s->add_option("--config", config_in, "Read a RunConfig JSON file; flags given here take precedence");
    s->add_option("--dump-config", config_out, "Write the resolved RunConfig JSON (- for stdout) and exit");
    add(s, "threads", s->add_option("--threads", cfg.threads, "Worker threads"));
    add(s, "ledger", s->add_option("--ledger", cfg.ledger, "Constants ledger path (else $MICROLIFT_LEDGER)"));
    add(s, "out_path", s->add_option("-o,--out", cfg.out_path, "Output file, - for stdout"));
    add(s, "grid_n", s->add_option("--grid-n", cfg.grid_n, "Circle grid size"));
    add(s, "seed", s->add_option("--seed", cfg.seed, "Seed for sampled inputs"));
  };
  auto fn_opt = [&](CLI::App* s) { add(s, "fn", s->add_option("--fn", cfg.fn, "Circle function name or CSV path")); };
  auto mu_opt = [&](CLI::App* s) { add(s, "mu", s->add_option("--mu", mu_s, "Symbol parameter mu, e.g. 0 or 2i")); };
  auto lambda_opt = [&](CLI::App* s) { add(s, "lambda", s->add_option("--lambda", lambda_s, "Spectral parameter")); };
  auto t_opt = [&](CLI::App* s) { add(s, "t_sweep", s->add_option("--t", t_list, "Comma separated t values")); };

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite and print the JSON report");
  common(verify);
  add(verify, "only", verify->add_option("--only", cfg.only, "Comma separated criterion ids, keys or modules"));

  auto* calibrate = app.add_subcommand("calibrate", "Measure the ledger constants and write the ledger");
  common(calibrate);
  add(calibrate, "date", calibrate->add_option("--date", cfg.date, "Calibration date stamp")->required());

  auto* sweep = app.add_subcommand("sweep", "Asymptotic sweep of the delta-slot functional in t");
  common(sweep);
  fn_opt(sweep);
  mu_opt(sweep);
  t_opt(sweep);
  add(sweep, "sp_norm", sweep->add_option("--sp-norm", cfg.sp_norm, "Predictor normalization (else ledger)"));

  auto* cmu = app.add_subcommand("c_mu", "Closed form and quadrature of c_mu");
  common(cmu);
  mu_opt(cmu);

  auto* ram = app.add_subcommand("ramanujan", "Discrete-series weight: closed form vs quadrature");
  common(ram);
  add(ram, "k", ram->add_option("--k", cfg.k, "Odd k > 1"));

  auto* tri = app.add_subcommand("trilinear", "Evaluate the model trilinear functional");
  common(tri);
  fn_opt(tri);
  mu_opt(tri);
  lambda_opt(tri);
  add(tri, "mode", tri->add_option("--mode", cfg.mode, "delta, triple or disc"));
  add(tri, "fn2", tri->add_option("--fn2", cfg.fn2, "Second function (triple mode)"));
  add(tri, "fn3", tri->add_option("--fn3", cfg.fn3, "Third function (triple mode)"));
  add(tri, "lambda2", tri->add_option("--lambda2", lambda2_s, "Second slot parameter"));
  add(tri, "lambda3", tri->add_option("--lambda3", lambda3_s, "Third slot parameter"));
  add(tri, "k", tri->add_option("--k", cfg.k, "Discrete series index (disc mode)"));

  auto* poi = app.add_subcommand("poisson", "Poisson transform on a polar grid");
  common(poi);
  fn_opt(poi);
  lambda_opt(poi);
  add(poi, "r_max", poi->add_option("--r-max", cfg.r_max, "Outer radius"));
  add(poi, "n_r", poi->add_option("--n-r", cfg.n_r, "Radii"));
  add(poi, "n_theta", poi->add_option("--n-theta", cfg.n_theta, "Angles"));

  auto* four = app.add_subcommand("fourier_roundtrip", "Helgason transform and inverse of the reference bump");
  common(four);
  add(four, "t_max", four->add_option("--t-max", cfg.t_max, "Spectral cutoff"));
  add(four, "c_p", four->add_option("--c-p", cfg.c_p, "Plancherel constant (else ledger)"));

  auto* pdo = app.add_subcommand("pdo_apply", "Apply Op(a) to a boundary-represented eigenfunction");
  common(pdo);
  fn_opt(pdo);
  lambda_opt(pdo);
  add(pdo, "symbol", pdo->add_option("--symbol", cfg.symbol, "one, mode:K or const:C"));
  add(pdo, "r_max", pdo->add_option("--r-max", cfg.r_max, "Outer radius"));
  add(pdo, "n_r", pdo->add_option("--n-r", cfg.n_r, "Radii"));
  add(pdo, "n_theta", pdo->add_option("--n-theta", cfg.n_theta, "Angles"));

  auto* loc = app.add_subcommand("localization", "Decay of the mixed-parameter functional in the offset");
  common(loc);
  fn_opt(loc);
  mu_opt(loc);
  add(loc, "t_i", loc->add_option("--t-i", cfg.t_i, "Base spectral parameter"));
  add(loc, "offsets", loc->add_option("--offsets", offsets_list, "Comma separated offsets"));
  add(loc, "tol", loc->add_option("--tol", cfg.tol, "Panel tolerance (0 keeps the default)"));

  auto* rho = app.add_subcommand("rho_compare", "Delta slot against the bump pair v_r, v_r");
  common(rho);
  fn_opt(rho);
  mu_opt(rho);
  t_opt(rho);
  add(rho, "r", rho->add_option("--r", cfg.r, "Bump scale (default t^0.4)"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    auto list = [](const std::string& s) {
      std::vector<double> out;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
          std::size_t used = 0;
          out.push_back(std::stod(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
          throw UsageError("bad number '" + item + "'");
        }
      }
      return out;
    };
    std::set<std::string> given;
    for (const auto& [key, o] : bound[cfg.command])
      if (o->count()) given.insert(key);
    if (given.count("t_sweep")) cfg.t_sweep = list(t_list);
    if (given.count("offsets")) cfg.offsets = list(offsets_list);
    if (given.count("mu")) cfg.mu = parse_complex(mu_s);
    if (given.count("lambda")) cfg.lambda = cfg.lambda2 = cfg.lambda3 = parse_complex(lambda_s);
    if (given.count("lambda2")) cfg.lambda2 = parse_complex(lambda2_s);
    if (given.count("lambda3")) cfg.lambda3 = parse_complex(lambda3_s);
    if (!config_in.empty()) {
      std::ifstream f(config_in);
      if (!f) throw UsageError("cannot read config " + config_in);
      json j;
      try {
        j = json::parse(f);
        std::string cmd = j.value("command", cfg.command);
        if (cmd != cfg.command) throw UsageError("config is for command '" + cmd + "'");
        merge_json(cfg, j, given);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad config: ") + e.what());
      }
    }
    validate(cfg);
    if (config_out == "-") {
      std::cout << to_json(cfg).dump(2) << '\n';
      return 0;
    }
    if (!config_out.empty()) {
      std::ofstream f(config_out);
      if (!f) throw ModuleError("cannot write " + config_out);
      f << to_json(cfg).dump(2) << '\n';
      return 0;
    }
    const std::string& c = cfg.command;
    if (c == "verify") return cmd_verify(cfg);
    if (c == "calibrate") return cmd_calibrate(cfg);
    if (c == "sweep") return cmd_sweep(cfg);
    if (c == "c_mu") return cmd_c_mu(cfg);
    if (c == "ramanujan") return cmd_ramanujan(cfg);
    if (c == "trilinear") return cmd_trilinear(cfg);
    if (c == "poisson") return cmd_poisson(cfg);
    if (c == "fourier_roundtrip") return cmd_fourier_roundtrip(cfg);
    if (c == "pdo_apply") return cmd_pdo_apply(cfg);
    if (c == "localization") return cmd_localization(cfg);
    if (c == "rho_compare") return cmd_rho_compare(cfg);
    throw UsageError("unknown command " + c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ModuleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
