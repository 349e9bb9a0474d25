/* C interface to the lgspdc shared library.
 *
 * Every function that can fail returns an lgspdc_status; on failure
 * lgspdc_last_error() holds a message for the calling thread. Handles are
 * opaque and owned by the caller, who releases them with the matching
 * *_destroy function. Lengths are in meters, wavenumbers in 1/m.
 */
#ifndef LGSPDC_H
#define LGSPDC_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(LGSPDC_BUILDING)
#    define LGSPDC_API __declspec(dllexport)
#  else
#    define LGSPDC_API __declspec(dllimport)
#  endif
#else
#  define LGSPDC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lgspdc_status {
  LGSPDC_OK = 0,
  LGSPDC_ERR_DOMAIN = 1,           /* bad physical input or precondition */
  LGSPDC_ERR_CONVERGENCE = 2,      /* quadrature budget exhausted */
  LGSPDC_ERR_SINGULAR = 3,         /* integrand pole at a node */
  LGSPDC_ERR_INVALID_ARGUMENT = 4, /* null handle, bad enum, index out of range */
  LGSPDC_ERR_INTERNAL = 5
} lgspdc_status;

typedef enum lgspdc_method {
  LGSPDC_METHOD_ANALYTIC = 0,
  LGSPDC_METHOD_CRYSTAL_INTEGRAL = 1,
  LGSPDC_METHOD_ORACLE_COLLINEAR = 2,
  LGSPDC_METHOD_ORACLE_FULL = 3
} lgspdc_method;

typedef enum lgspdc_normalization {
  LGSPDC_NORM_MAX_ONE = 0,
  LGSPDC_NORM_SUM_ONE = 1
} lgspdc_normalization;

/* Sweep families for spiral-bandwidth tables. The swept value is gamma_s. */
typedef enum lgspdc_sweep {
  LGSPDC_SWEEP_EQUAL_WIDTH = 0, /* gamma_i = gamma_s */
  LGSPDC_SWEEP_WIDTH_RATIO = 1, /* gamma_i = gamma_s / param (w_i = param * w_s) */
  LGSPDC_SWEEP_GAMMA_DIFF = 2   /* gamma_i = gamma_s + param */
} lgspdc_sweep;

typedef enum lgspdc_table_kind {
  LGSPDC_TABLE_SPIRAL_BANDWIDTH = 0, /* rows: sweep points, cols: l */
  LGSPDC_TABLE_CORRELATION = 1       /* rows: p_s, cols: p_i */
} lgspdc_table_kind;

typedef enum lgspdc_deviation_kind {
  LGSPDC_DEV_CRYSTAL = 0,         /* |crystal - analytic| / |analytic| */
  LGSPDC_DEV_CRYSTAL_MODULUS = 1, /* ||crystal| - |analytic|| / |analytic| */
  LGSPDC_DEV_COLLINEAR = 2,       /* |collinear - analytic| / |analytic| */
  LGSPDC_DEV_FULL = 3             /* |full - crystal| / |crystal| */
} lgspdc_deviation_kind;

typedef struct lgspdc_mode {
  int l_s;
  int p_s;
  int l_i;
  int p_i;
} lgspdc_mode;

typedef struct lgspdc_amplitude {
  double re;
  double im;
  double abs_err;
  lgspdc_method method;
} lgspdc_amplitude;

typedef struct lgspdc_compare_row {
  lgspdc_mode mode;
  lgspdc_amplitude analytic;
  lgspdc_amplitude crystal;
  lgspdc_amplitude collinear;
  lgspdc_amplitude full; /* valid only when has_full != 0 */
  int has_full;
  double dev_crystal;
  double dev_crystal_modulus;
  double dev_collinear;
  double dev_full;
} lgspdc_compare_row;

typedef struct lgspdc_deviation {
  double max;
  double median;
} lgspdc_deviation;

typedef struct lgspdc_context lgspdc_context;
typedef struct lgspdc_table lgspdc_table;
typedef struct lgspdc_report lgspdc_report;

LGSPDC_API const char* lgspdc_version(void);
/* Message of the last failed call on this thread; "" if none. */
LGSPDC_API const char* lgspdc_last_error(void);
LGSPDC_API const char* lgspdc_method_name(lgspdc_method method);

/* A new context has gamma_i = gamma_s = 1, no crystal (thin-crystal
 * convention) and default quadrature settings. */
LGSPDC_API lgspdc_status lgspdc_context_create(lgspdc_context** out);
LGSPDC_API void lgspdc_context_destroy(lgspdc_context* ctx);

LGSPDC_API lgspdc_status lgspdc_set_waists(lgspdc_context* ctx, double w_p, double w_s,
                                           double w_i);
/* Keeps the current pump waist (1 in a fresh context): w_s = w_p/gamma_s,
   w_i = w_p/gamma_i. */
LGSPDC_API lgspdc_status lgspdc_set_gammas(lgspdc_context* ctx, double gamma_i, double gamma_s);
LGSPDC_API lgspdc_status lgspdc_set_crystal(lgspdc_context* ctx, double length, double k_p);
LGSPDC_API lgspdc_status lgspdc_set_crystal_wavelength(lgspdc_context* ctx, double length,
                                                       double wavelength,
                                                       double refractive_index);
LGSPDC_API lgspdc_status lgspdc_clear_crystal(lgspdc_context* ctx);
/* dims is 1 (radial and crystal integrals) or 3 (full oracle). */
LGSPDC_API lgspdc_status lgspdc_set_quadrature(lgspdc_context* ctx, int dims, double rel_tol,
                                               double abs_tol, size_t max_evaluations);

LGSPDC_API lgspdc_status lgspdc_get_geometry(const lgspdc_context* ctx, double* w_p,
                                             double* w_s, double* w_i, double* gamma_i,
                                             double* gamma_s);
/* has_crystal is set to 0 when no crystal is configured. strength is
 * L / (k_p w_p^2). Any output pointer may be NULL. */
LGSPDC_API lgspdc_status lgspdc_get_crystal(const lgspdc_context* ctx, int* has_crystal,
                                            double* length, double* k_p, double* strength);
LGSPDC_API lgspdc_status lgspdc_get_quadrature(const lgspdc_context* ctx, int dims,
                                               double* rel_tol, double* abs_tol,
                                               size_t* max_evaluations);

/* On LGSPDC_ERR_CONVERGENCE, out still receives the best estimate. */
LGSPDC_API lgspdc_status lgspdc_amplitude_eval(const lgspdc_context* ctx, lgspdc_method method,
                                               lgspdc_mode mode, lgspdc_amplitude* out);

/* One-row table for the context geometry, l in [-l_max, l_max]. */
LGSPDC_API lgspdc_status lgspdc_spiral_bandwidth(const lgspdc_context* ctx,
                                                 lgspdc_method method, int p_i, int p_s,
                                                 int l_max, lgspdc_table** out);
/* One row per value. Each row keeps the context's pump waist, which sets
   the crystal strength L/(k_p w_p^2). */
LGSPDC_API lgspdc_status lgspdc_spiral_bandwidth_sweep(const lgspdc_context* ctx,
                                                       lgspdc_method method,
                                                       lgspdc_sweep sweep,
                                                       const double* values, size_t count,
                                                       double param, int p_i, int p_s,
                                                       int l_max, lgspdc_table** out);
LGSPDC_API lgspdc_status lgspdc_pp_correlation(const lgspdc_context* ctx, lgspdc_method method,
                                               int l, int p_max, lgspdc_normalization norm,
                                               lgspdc_table** out);

LGSPDC_API void lgspdc_table_destroy(lgspdc_table* table);
LGSPDC_API lgspdc_table_kind lgspdc_table_get_kind(const lgspdc_table* table);
LGSPDC_API size_t lgspdc_table_rows(const lgspdc_table* table);
LGSPDC_API size_t lgspdc_table_cols(const lgspdc_table* table);
/* Row-major, rows * cols entries; owned by the table. */
LGSPDC_API const double* lgspdc_table_data(const lgspdc_table* table);
LGSPDC_API lgspdc_status lgspdc_table_at(const lgspdc_table* table, size_t row, size_t col,
                                         double* out);
/* Spiral bandwidth: first l of the window. Correlation: 0. */
LGSPDC_API int lgspdc_table_col_offset(const lgspdc_table* table);
/* Sweep value and geometry ratios of a spiral-bandwidth row. For a
 * correlation matrix, value is p_s and the ratios are the context's. */
LGSPDC_API lgspdc_status lgspdc_table_row_info(const lgspdc_table* table, size_t row,
                                               double* value, double* gamma_i,
                                               double* gamma_s);
/* IPR and entropy of one spiral-bandwidth row, or of the whole correlation
 * matrix (row must then be 0). */
LGSPDC_API lgspdc_status lgspdc_table_summary(const lgspdc_table* table, size_t row,
                                              double* ipr, double* entropy);
/* Local maxima along l >= 0 of a spiral-bandwidth row. */
LGSPDC_API lgspdc_status lgspdc_table_local_maxima(const lgspdc_table* table, size_t row,
                                                   size_t* count);

/* Needs a crystal with L > 0. Modes (l, -l, p_s, p_i), |l| <= l_max,
 * p <= p_max, ordered by l, then p_s, then p_i. */
LGSPDC_API lgspdc_status lgspdc_compare(const lgspdc_context* ctx, int p_max, int l_max,
                                        int include_full, lgspdc_report** out);
LGSPDC_API void lgspdc_report_destroy(lgspdc_report* report);
LGSPDC_API size_t lgspdc_report_size(const lgspdc_report* report);
LGSPDC_API lgspdc_status lgspdc_report_row(const lgspdc_report* report, size_t index,
                                           lgspdc_compare_row* out);
/* LGSPDC_ERR_INVALID_ARGUMENT for LGSPDC_DEV_FULL when the full oracle
 * was not run. */
LGSPDC_API lgspdc_status lgspdc_report_summary(const lgspdc_report* report,
                                               lgspdc_deviation_kind kind,
                                               lgspdc_deviation* out);

#ifdef __cplusplus
}
#endif

#endif
