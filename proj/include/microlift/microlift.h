/* C interface to the microlift core. All functions return an ml_status;
 * on failure ml_last_error() holds a message for the calling thread. */
#ifndef MICROLIFT_H
#define MICROLIFT_H

#include <stddef.h>
#include <stdint.h>

#if defined(MICROLIFT_BUILDING)
#define ML_API __attribute__((visibility("default")))
#else
#define ML_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  ML_OK = 0,
  ML_ERR_INVALID_ARGUMENT = 1,
  ML_ERR_GAMMA_POLE = 2,
  ML_ERR_BUDGET_EXCEEDED = 3,
  ML_ERR_OVERLAPPING_SINGULARITIES = 4,
  ML_ERR_EXPONENT_OUT_OF_RANGE = 5,
  ML_ERR_REGULARIZATION_REQUIRED = 6,
  ML_ERR_GRID_MISMATCH = 7,
  ML_ERR_RESOLUTION = 8,
  ML_ERR_STENCIL_ESCAPES_DISK = 9,
  ML_ERR_IO = 10,
  ML_ERR_PARSE = 11,
  ML_ERR_INTERNAL = 99
} ml_status;

typedef struct {
  double re, im;
} ml_complex;

typedef struct {
  ml_complex value;
  double err_estimate;
  int64_t nodes_used;
} ml_quad;

typedef struct ml_circle ml_circle;
typedef struct ml_symbol ml_symbol;

ML_API const char* ml_last_error(void);
ML_API const char* ml_status_name(int status);
ML_API const char* ml_version(void);
/* free strings returned through char** out parameters */
ML_API void ml_string_free(char* s);

/* even circle functions on N samples */
ML_API int ml_circle_named(const char* name, size_t n, ml_circle** out);
ML_API int ml_circle_fourier(size_t n, const int* k, const ml_complex* c, size_t count, ml_circle** out);
ML_API int ml_circle_read_csv(const char* path, size_t n_if_fourier, ml_circle** out);
ML_API int ml_circle_write_csv(const ml_circle* f, const char* path, int fourier);
/* out = f - pi_lambda(diag(e^s, e^-s)) f */
ML_API int ml_circle_flow_difference(const ml_circle* f, ml_complex lambda, double s, ml_circle** out);
ML_API int ml_circle_eval(const ml_circle* f, double theta, ml_complex* out);
ML_API void ml_circle_free(ml_circle* f);

ML_API int ml_gamma(ml_complex z, ml_complex* out);
ML_API int ml_c_mu(ml_complex mu, ml_complex* closed_form, ml_quad* quadrature);
ML_API int ml_d_mu(ml_complex mu, const ml_circle* v, ml_complex* out);
ML_API int ml_ramanujan(int k, ml_complex* closed_form, ml_quad* quadrature);

ML_API int ml_plane_wave(ml_complex lambda, ml_complex z, double b, ml_complex* out);
ML_API int ml_poisson(ml_complex lambda, const ml_circle* density, ml_complex z, ml_complex* out);

/* triple functional with three vectors, and with a delta in the middle slot */
ML_API int ml_l_mod(const ml_circle* f1, const ml_circle* f2, const ml_circle* f3, ml_complex l1, ml_complex l2,
                    ml_complex l3, ml_quad* out);
ML_API int ml_l_mod_delta(const ml_circle* v, ml_complex mu, ml_complex lambda2, ml_complex lambda3, ml_quad* out);
ML_API int ml_l_mod_disc(const ml_circle* v, int k, ml_complex lambda, ml_quad* out);

typedef struct {
  double t;
  ml_quad value;
  double abs_scaled;
  ml_complex predictor;
  double rel_gap;
} ml_sweep_row;

/* rows must hold n entries; sp_norm <= 0 takes the ledger value */
ML_API int ml_sweep_asymptotics(const ml_circle* v, ml_complex mu, const double* ts, size_t n, double sp_norm,
                                int threads, ml_sweep_row* rows, double* fitted_exponent);

typedef struct {
  double offset;
  ml_quad value;
  double abs_scaled;
} ml_localization_row;

/* tol <= 0 keeps the default panel tolerance */
ML_API int ml_localization(const ml_circle* a, ml_complex mu, double t_i, const double* offsets, size_t n,
                           int threads, double tol, ml_localization_row* rows);

typedef struct {
  ml_quad lhs;
  ml_quad rhs;
  double gap;
} ml_rho;

ML_API int ml_rho_compare(const ml_circle* v, ml_complex mu, double t, double r, int threads, ml_rho* out);

typedef struct {
  double t_max;
  double c_p;
  double c_p_fit;
  double l2_rel_err;
  double plancherel_gap;
  double spectral_tail;
} ml_roundtrip;

/* reference bump; c_p <= 0 takes the ledger value */
ML_API int ml_fourier_roundtrip(double t_max, double c_p, ml_roundtrip* out);

/* symbols a(z, b) */
ML_API int ml_symbol_constant(ml_complex c, ml_symbol** out);
ML_API int ml_symbol_boundary_mode(int k, ml_symbol** out);
ML_API void ml_symbol_free(ml_symbol* a);
ML_API int ml_pdo_apply(const ml_symbol* a, ml_complex lambda, const ml_circle* density, ml_complex z,
                        ml_complex* out);
ML_API int ml_symbol_roundtrip(const ml_symbol* a, ml_complex lambda, ml_complex z, double b, ml_complex* applied,
                               ml_complex* reconstructed);

/* acceptance suite; only: comma list of ids or keys, NULL for all; ledger NULL for the default lookup */
ML_API int ml_verify(const char* only, int threads, const char* ledger, char** report_json, int* all_pass);
ML_API int ml_calibrate(const char* ledger, const char* date, int threads, char** ledger_json);
/* resolved ledger path and its version string */
ML_API int ml_ledger_info(const char* ledger, char** path, char** version);
/* '#'-prefixed convention lines for table headers */
ML_API int ml_conventions(const char* ledger, char** text);

#ifdef __cplusplus
}
#endif

#endif
