#include "microlift/microlift.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "circle_model/representation.hpp"
#include "helgason/helgason.hpp"
#include "numerics/gamma.hpp"
#include "pdo/pdo.hpp"
#include "trilinear/trilinear.hpp"
#include "verify/table.hpp"
#include "verify/verify.hpp"

struct ml_circle {
  microlift::CircleFunction f;
};

struct ml_symbol {
  microlift::Symbol a;
};

namespace {

using namespace microlift;

thread_local std::string g_last_error;

cplx in(ml_complex c) { return {c.re, c.im}; }
ml_complex out_c(cplx c) { return {c.real(), c.imag()}; }
ml_quad out_q(const QuadValue& q) { return {out_c(q.value), q.err_estimate, q.nodes_used}; }

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <class Fn>
int guard(Fn fn) {
  try {
    fn();
    g_last_error.clear();
    return ML_OK;
  } catch (const microlift::Error& e) {
    int code = static_cast<int>(e.code());
    return fail(code == static_cast<int>(ErrorCode::Internal) ? ML_ERR_INTERNAL : code, e.what());
  } catch (const std::exception& e) {
    return fail(ML_ERR_INTERNAL, e.what());
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, "capi", std::string("null ") + what);
}

std::string opt_str(const char* s) { return s ? std::string(s) : std::string(); }

double ledger_value(const char* ledger, const char* key) {
  Ledger l = Ledger::load(ledger_path(opt_str(ledger)));
  auto v = l.value(key);
  if (!v) throw Error(ErrorCode::Parse, "verify", std::string("ledger has no usable ") + key);
  return *v;
}

}  // namespace

extern "C" {

const char* ml_last_error(void) { return g_last_error.c_str(); }

const char* ml_status_name(int status) {
  switch (status) {
    case ML_OK: return "ok";
    case ML_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case ML_ERR_GAMMA_POLE: return "gamma-pole";
    case ML_ERR_BUDGET_EXCEEDED: return "budget-exceeded";
    case ML_ERR_OVERLAPPING_SINGULARITIES: return "overlapping-singularities";
    case ML_ERR_EXPONENT_OUT_OF_RANGE: return "exponent-out-of-range";
    case ML_ERR_REGULARIZATION_REQUIRED: return "regularization-required";
    case ML_ERR_GRID_MISMATCH: return "grid-mismatch";
    case ML_ERR_RESOLUTION: return "resolution";
    case ML_ERR_STENCIL_ESCAPES_DISK: return "stencil-escapes-disk";
    case ML_ERR_IO: return "io";
    case ML_ERR_PARSE: return "parse";
    default: return "internal";
  }
}

const char* ml_version(void) { return "1.0.0"; }

void ml_string_free(char* s) { std::free(s); }

int ml_circle_named(const char* name, size_t n, ml_circle** out) {
  return guard([&] {
    need(name, "name");
    need(out, "output");
    *out = new ml_circle{named_function(name, n)};
  });
}

int ml_circle_fourier(size_t n, const int* k, const ml_complex* c, size_t count, ml_circle** out) {
  return guard([&] {
    need(out, "output");
    if (count) {
      need(k, "frequencies");
      need(c, "coefficients");
    }
    std::vector<std::pair<int, cplx>> co;
    for (size_t i = 0; i < count; ++i) co.emplace_back(k[i], in(c[i]));
    *out = new ml_circle{CircleFunction::from_fourier(n, co)};
  });
}

int ml_circle_read_csv(const char* path, size_t n_if_fourier, ml_circle** out) {
  return guard([&] {
    need(path, "path");
    need(out, "output");
    *out = new ml_circle{CircleFunction::read_csv(path, n_if_fourier)};
  });
}

int ml_circle_write_csv(const ml_circle* f, const char* path, int fourier) {
  return guard([&] {
    need(f, "circle function");
    need(path, "path");
    f->f.write_csv(path, fourier != 0);
  });
}

int ml_circle_flow_difference(const ml_circle* f, ml_complex lambda, double s, ml_circle** out) {
  return guard([&] {
    need(f, "circle function");
    need(out, "output");
    *out = new ml_circle{f->f - pi_act(in(lambda), GroupElement::diagonal(s), f->f)};
  });
}

int ml_circle_eval(const ml_circle* f, double theta, ml_complex* out) {
  return guard([&] {
    need(f, "circle function");
    need(out, "output");
    *out = out_c(f->f(theta));
  });
}

void ml_circle_free(ml_circle* f) { delete f; }

int ml_gamma(ml_complex z, ml_complex* out) {
  return guard([&] {
    need(out, "output");
    *out = out_c(gamma_complex(in(z)));
  });
}

int ml_c_mu(ml_complex mu, ml_complex* closed_form, ml_quad* quadrature) {
  return guard([&] {
    need(closed_form, "output");
    need(quadrature, "output");
    *closed_form = out_c(c_mu_closed(in(mu)));
    *quadrature = out_q(c_mu_quadrature(in(mu)));
  });
}

int ml_d_mu(ml_complex mu, const ml_circle* v, ml_complex* out) {
  return guard([&] {
    need(v, "circle function");
    need(out, "output");
    *out = out_c(d_mu(in(mu), v->f));
  });
}

int ml_ramanujan(int k, ml_complex* closed_form, ml_quad* quadrature) {
  return guard([&] {
    need(closed_form, "output");
    need(quadrature, "output");
    RamanujanCheck r = ramanujan_check(k);
    *closed_form = out_c(r.closed_form);
    *quadrature = out_q(r.quadrature);
  });
}

int ml_plane_wave(ml_complex lambda, ml_complex z, double b, ml_complex* out) {
  return guard([&] {
    need(out, "output");
    *out = out_c(plane_wave(in(lambda), DiskPoint::make(in(z)), BoundaryPoint::make(b)));
  });
}

int ml_poisson(ml_complex lambda, const ml_circle* density, ml_complex z, ml_complex* out) {
  return guard([&] {
    need(density, "density");
    need(out, "output");
    *out = out_c(poisson_transform(in(lambda), density->f, DiskPoint::make(in(z))));
  });
}

int ml_l_mod(const ml_circle* f1, const ml_circle* f2, const ml_circle* f3, ml_complex l1, ml_complex l2,
             ml_complex l3, ml_quad* out) {
  return guard([&] {
    need(f1, "f1");
    need(f2, "f2");
    need(f3, "f3");
    need(out, "output");
    *out = out_q(l_mod(f1->f, f2->f, f3->f, in(l1), in(l2), in(l3)));
  });
}

int ml_l_mod_delta(const ml_circle* v, ml_complex mu, ml_complex lambda2, ml_complex lambda3, ml_quad* out) {
  return guard([&] {
    need(v, "circle function");
    need(out, "output");
    *out = out_q(l_mod_delta_mixed(v->f, in(mu), in(lambda2), in(lambda3)));
  });
}

int ml_l_mod_disc(const ml_circle* v, int k, ml_complex lambda, ml_quad* out) {
  return guard([&] {
    need(v, "circle function");
    need(out, "output");
    *out = out_q(l_mod_disc(v->f, k, in(lambda)));
  });
}

int ml_sweep_asymptotics(const ml_circle* v, ml_complex mu, const double* ts, size_t n, double sp_norm, int threads,
                         ml_sweep_row* rows, double* fitted_exponent) {
  return guard([&] {
    need(v, "circle function");
    need(rows, "rows");
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "trilinear", "empty t list");
    need(ts, "t list");
    double norm = sp_norm > 0.0 ? sp_norm : ledger_value(nullptr, "sp_norm_constant");
    AsymptoticsReport rep = sweep_asymptotics(v->f, in(mu), std::vector<double>(ts, ts + n), norm, threads);
    for (size_t i = 0; i < n; ++i) {
      const auto& r = rep.rows[i];
      rows[i] = {r.t, out_q(r.value), r.abs_scaled, out_c(r.predictor), r.rel_gap};
    }
    if (fitted_exponent) *fitted_exponent = rep.fitted_exponent;
  });
}

int ml_localization(const ml_circle* a, ml_complex mu, double t_i, const double* offsets, size_t n, int threads,
                    double tol, ml_localization_row* rows) {
  return guard([&] {
    need(a, "symbol function");
    need(rows, "rows");
    if (n) need(offsets, "offsets");
    DeltaOptions d;
    if (tol > 0.0) d.cheb_tol = tol;
    auto res = localization_scan(a->f, in(mu), t_i, std::vector<double>(offsets, offsets + n), threads, d);
    for (size_t i = 0; i < n; ++i) rows[i] = {res[i].offset, out_q(res[i].value), res[i].abs_scaled};
  });
}

int ml_rho_compare(const ml_circle* v, ml_complex mu, double t, double r, int threads, ml_rho* out) {
  return guard([&] {
    need(v, "circle function");
    need(out, "output");
    RhoResult res = rho_comparison(v->f, in(mu), cplx(0.0, t), r, threads);
    *out = {out_q(res.lhs), out_q(res.rhs), res.gap};
  });
}

int ml_fourier_roundtrip(double t_max, double c_p, ml_roundtrip* out) {
  return guard([&] {
    need(out, "output");
    double cp = c_p > 0.0 ? c_p : ledger_value(nullptr, "plancherel_c_p");
    RoundTrip r = helgason_roundtrip(reference_bump, t_max, cp);
    *out = {r.t_max, r.c_p, r.c_p_fit, r.l2_rel_err, r.plancherel_gap, r.spectral_tail};
  });
}

int ml_symbol_constant(ml_complex c, ml_symbol** out) {
  return guard([&] {
    need(out, "output");
    *out = new ml_symbol{Symbol::constant(in(c))};
  });
}

int ml_symbol_boundary_mode(int k, ml_symbol** out) {
  return guard([&] {
    need(out, "output");
    *out = new ml_symbol{Symbol::boundary_mode(k)};
  });
}

void ml_symbol_free(ml_symbol* a) { delete a; }

int ml_pdo_apply(const ml_symbol* a, ml_complex lambda, const ml_circle* density, ml_complex z, ml_complex* out) {
  return guard([&] {
    need(a, "symbol");
    need(density, "density");
    need(out, "output");
    *out = out_c(op_apply(a->a, in(lambda), density->f, DiskPoint::make(in(z))));
  });
}

int ml_symbol_roundtrip(const ml_symbol* a, ml_complex lambda, ml_complex z, double b, ml_complex* applied,
                        ml_complex* reconstructed) {
  return guard([&] {
    need(a, "symbol");
    need(applied, "output");
    need(reconstructed, "output");
    SymbolRoundTrip r = symbol_roundtrip(a->a, in(lambda), DiskPoint::make(in(z)), BoundaryPoint::make(b));
    *applied = out_c(r.applied);
    *reconstructed = out_c(r.reconstructed);
  });
}

int ml_verify(const char* only, int threads, const char* ledger, char** report_json, int* all_pass) {
  return guard([&] {
    need(report_json, "output");
    VerifyOptions o;
    if (only) o.only = parse_only(only);
    o.threads = threads;
    o.ledger_path = opt_str(ledger);
    std::string version;
    try {
      version = Ledger::load(ledger_path(o.ledger_path)).version;
    } catch (const Error&) {
    }
    auto crit = run_verify(o);
    bool ok = true;
    for (const auto& c : crit) ok = ok && c.pass();
    if (all_pass) *all_pass = ok ? 1 : 0;
    *report_json = dup(microlift::report_json(crit, version));
  });
}

int ml_calibrate(const char* ledger, const char* date, int threads, char** ledger_json) {
  return guard([&] {
    need(date, "date");
    Ledger l = calibrate(date, threads);
    std::string path = ledger_path(opt_str(ledger));
    l.save(path);
    if (ledger_json) {
      std::ifstream inp(path);
      std::stringstream ss;
      ss << inp.rdbuf();
      *ledger_json = dup(ss.str());
    }
  });
}

int ml_ledger_info(const char* ledger, char** path, char** version) {
  return guard([&] {
    std::string p = ledger_path(opt_str(ledger));
    std::string v = Ledger::load(p).version;
    if (path) *path = dup(p);
    if (version) *version = dup(v);
  });
}

int ml_conventions(const char* ledger, char** text) {
  return guard([&] {
    need(text, "output");
    std::string v;
    try {
      v = Ledger::load(ledger_path(opt_str(ledger))).version;
    } catch (const Error&) {
    }
    CsvTable t({"x"});
    t.conventions(v);
    std::string s = t.str();
    *text = dup(s.substr(0, s.rfind("x\n")));
  });
}

}  // extern "C"
