/* C interface to the robust CUR library. All objects are opaque handles
 * released with their matching *_destroy call. Every function that can fail
 * returns an rcur_status; on failure rcur_last_error() describes the cause
 * for the calling thread. Matrices cross the boundary in row-major order. */
#ifndef RCUR_RCUR_H
#define RCUR_RCUR_H

#include <stddef.h>
#include <stdint.h>

#if defined(RCUR_BUILDING_LIBRARY)
#define RCUR_API __attribute__((visibility("default")))
#else
#define RCUR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rcur_status {
  RCUR_OK = 0,
  RCUR_E_INVALID_ARGUMENT = 1,
  RCUR_E_OUT_OF_RANGE = 2,
  RCUR_E_NON_FINITE = 3,
  RCUR_E_RANK_DEFICIENT = 4,
  RCUR_E_RANK_DEFICIENT_CORE = 5,
  RCUR_E_INSUFFICIENT_SAMPLES = 6,
  RCUR_E_DEGENERATE = 7,
  RCUR_E_IO = 8,
  RCUR_E_PARSE = 9,
  RCUR_E_INTERNAL = 10
} rcur_status;

typedef enum rcur_format { RCUR_FORMAT_CSV = 0, RCUR_FORMAT_BIN = 1 } rcur_format;

typedef enum rcur_sample_mode {
  RCUR_WITHOUT_REPLACEMENT = 0,
  RCUR_WITH_REPLACEMENT = 1
} rcur_sample_mode;

typedef enum rcur_size_variant {
  RCUR_SIZE_LOG_N = 0,      /* c mu r ln(N)   */
  RCUR_SIZE_LOG_RN = 1,     /* c mu r ln(r N) */
  RCUR_SIZE_PAPER_VIDEO = 2 /* c r ln(N)      */
} rcur_size_variant;

typedef enum rcur_table_format { RCUR_TABLE_MARKDOWN = 0, RCUR_TABLE_CSV = 1 } rcur_table_format;

typedef struct rcur_matrix rcur_matrix;
typedef struct rcur_rpca_result rcur_rpca_result;
typedef struct rcur_cur_result rcur_cur_result;

RCUR_API const char* rcur_version(void);
RCUR_API const char* rcur_last_error(void);
RCUR_API const char* rcur_status_name(rcur_status status);
RCUR_API void rcur_string_free(char* s);

/* ---- matrices ---- */

/* data may be NULL for a zero matrix. */
RCUR_API rcur_status rcur_matrix_create(size_t rows, size_t cols, const double* data,
                                        rcur_matrix** out);
RCUR_API void rcur_matrix_destroy(rcur_matrix* m);
RCUR_API size_t rcur_matrix_rows(const rcur_matrix* m);
RCUR_API size_t rcur_matrix_cols(const rcur_matrix* m);
/* out must hold rows * cols doubles. */
RCUR_API rcur_status rcur_matrix_copy(const rcur_matrix* m, double* out);
RCUR_API rcur_status rcur_matrix_load(const char* path, rcur_matrix** out);
RCUR_API rcur_status rcur_matrix_save(const rcur_matrix* m, const char* path, rcur_format format);
/* Columns cols[0..count) of m, in the listed order. */
RCUR_API rcur_status rcur_matrix_columns(const rcur_matrix* m, const size_t* cols, size_t count,
                                         rcur_matrix** out);
/* a - b */
RCUR_API rcur_status rcur_matrix_subtract(const rcur_matrix* a, const rcur_matrix* b,
                                          rcur_matrix** out);

/* Directory of 8-bit P5 PGM frames, lexicographic order, one frame per column. */
RCUR_API rcur_status rcur_frames_load(const char* dir, rcur_matrix** out, size_t* height,
                                      size_t* width);
/* Writes <prefix>_NNNNN.pgm per column; values clamped and rounded half-to-even. */
RCUR_API rcur_status rcur_frames_save(const rcur_matrix* m, size_t height, size_t width,
                                      const char* dir, const char* prefix);

/* ---- generators ---- */

typedef struct rcur_synth_config {
  size_t m, n, r;
  double kappa;
  double alpha;
  double outlier_magnitude;
  uint64_t seed;
} rcur_synth_config;

typedef struct rcur_video_config {
  size_t frames, height, width, r;
  double alpha;
  size_t blob_size;
  uint64_t seed;
} rcur_video_config;

RCUR_API void rcur_synth_config_default(rcur_synth_config* cfg);
RCUR_API void rcur_video_config_default(rcur_video_config* cfg);
RCUR_API rcur_status rcur_synth_generate(const rcur_synth_config* cfg, rcur_matrix** observed,
                                         rcur_matrix** low_rank, rcur_matrix** sparse);
/* mask holds 1.0 on foreground pixels and 0.0 elsewhere. */
RCUR_API rcur_status rcur_video_generate(const rcur_video_config* cfg, rcur_matrix** observed,
                                         rcur_matrix** low_rank, rcur_matrix** sparse,
                                         rcur_matrix** mask);

/* Write observed, low_rank, sparse and manifest.json into dir. The video
 * variant adds mask and a frames/ directory holding the observed frames.
 * manifest (optional) receives the manifest text; free with rcur_string_free. */
RCUR_API rcur_status rcur_synth_save(const rcur_synth_config* cfg, const char* dir,
                                     rcur_format format, char** manifest);
RCUR_API rcur_status rcur_video_save(const rcur_video_config* cfg, const char* dir,
                                     rcur_format format, char** manifest);
/* Ground-truth L for an input written by the calls above, located through the
 * sibling manifest.json. *out is NULL when there is none. */
RCUR_API rcur_status rcur_truth_for(const char* input, char** out);

/* ---- robust PCA ---- */

typedef struct rcur_rpca_config {
  size_t target_rank;
  size_t max_iters;
  double tol;
  double threshold_scale; /* xi */
  double threshold_decay; /* rho */
  int stagewise;
  double eta_init; /* NaN selects it from the data */
  double mu_hint;  /* NaN estimates it from the data */
} rcur_rpca_config;

RCUR_API void rcur_rpca_config_default(rcur_rpca_config* cfg);
RCUR_API rcur_status rcur_altproj(const rcur_matrix* d, const rcur_rpca_config* cfg,
                                  rcur_rpca_result** out);
RCUR_API void rcur_rpca_result_destroy(rcur_rpca_result* res);
/* The returned matrices are owned by the caller. */
RCUR_API rcur_status rcur_rpca_result_low_rank(const rcur_rpca_result* res, rcur_matrix** out);
RCUR_API rcur_status rcur_rpca_result_sparse(const rcur_rpca_result* res, rcur_matrix** out);
RCUR_API size_t rcur_rpca_result_iterations(const rcur_rpca_result* res);
RCUR_API int rcur_rpca_result_converged(const rcur_rpca_result* res);
RCUR_API int rcur_rpca_result_trace_monotone(const rcur_rpca_result* res);
RCUR_API double rcur_rpca_result_residual_norm(const rcur_rpca_result* res);
RCUR_API double rcur_rpca_result_mu_used(const rcur_rpca_result* res);
RCUR_API size_t rcur_rpca_result_trace_length(const rcur_rpca_result* res);
RCUR_API const double* rcur_rpca_result_trace(const rcur_rpca_result* res);

/* ---- sampling ---- */

typedef struct rcur_sample_spec {
  size_t count; /* 0 selects the heuristic below */
  double c;
  rcur_size_variant variant;
  rcur_sample_mode mode;
  uint64_t seed;
} rcur_sample_spec;

RCUR_API rcur_status rcur_sample_size(size_t universe, size_t r, double mu, double c,
                                      rcur_size_variant variant, size_t* out);
/* out must hold count indices. */
RCUR_API rcur_status rcur_sample_uniform(size_t universe, size_t count, rcur_sample_mode mode,
                                         uint64_t seed, size_t* out);
/* x is r x m. out receives k ascending indices; criteria (optional) receives
 * the m - k removal criterion values in removal order. */
RCUR_API rcur_status rcur_greedy_css(const rcur_matrix* x, size_t k, size_t* out,
                                     double* criteria);

/* ---- robust CUR ---- */

typedef struct rcur_cur_config {
  rcur_rpca_config rpca;
  rcur_sample_spec rows;
  rcur_sample_spec cols;
  double theory_eps;
  double theory_delta;
} rcur_cur_config;

RCUR_API void rcur_cur_config_default(rcur_cur_config* cfg);
RCUR_API rcur_status rcur_cur_uniform(const rcur_matrix* d, size_t r, const rcur_cur_config* cfg,
                                      rcur_cur_result** out);
RCUR_API rcur_status rcur_cur_hybrid(const rcur_matrix* d, size_t r, const rcur_cur_config* cfg,
                                     rcur_cur_result** out);
RCUR_API void rcur_cur_result_destroy(rcur_cur_result* res);
RCUR_API rcur_status rcur_cur_result_reconstruct(const rcur_cur_result* res, rcur_matrix** out);
RCUR_API rcur_status rcur_cur_result_c_hat(const rcur_cur_result* res, rcur_matrix** out);
RCUR_API rcur_status rcur_cur_result_r_hat(const rcur_cur_result* res, rcur_matrix** out);
RCUR_API rcur_status rcur_cur_result_u_pinv(const rcur_cur_result* res, rcur_matrix** out);
RCUR_API size_t rcur_cur_result_row_count(const rcur_cur_result* res);
RCUR_API size_t rcur_cur_result_col_count(const rcur_cur_result* res);
RCUR_API const size_t* rcur_cur_result_rows(const rcur_cur_result* res);
RCUR_API const size_t* rcur_cur_result_cols(const rcur_cur_result* res);
RCUR_API size_t rcur_cur_result_retries(const rcur_cur_result* res);
RCUR_API double rcur_cur_result_mu_rows(const rcur_cur_result* res);
RCUR_API double rcur_cur_result_mu_cols(const rcur_cur_result* res);
/* which: 0 for the column solve D(:, J), 1 for the row solve D(I, :). */
RCUR_API const rcur_rpca_result* rcur_cur_result_rpca(const rcur_cur_result* res, int which);

RCUR_API double rcur_error_bound_rhs(double w_pinv_norm, double v_pinv_norm, double perturbation);

/* ---- diagnostics ---- */

typedef struct rcur_diagnostics {
  double mu1, mu2;
  double alpha_row, alpha_col, alpha;
  double alpha_row_tol, alpha_col_tol, alpha_tol;
  double kappa;
  size_t rank_numeric;
  int has_rel_spectral_error;
  double rel_spectral_error;
  int has_beta;
  double beta;
  int has_beta_prime;
  double beta_prime;
} rcur_diagnostics;

/* sparse, estimate, rows and cols may be NULL. */
RCUR_API rcur_status rcur_diagnose(const rcur_matrix* low_rank, size_t r,
                                   const rcur_matrix* sparse, const rcur_matrix* estimate,
                                   const size_t* rows, size_t row_count, const size_t* cols,
                                   size_t col_count, rcur_diagnostics* out);
/* JSON object with the fields of rcur_diagnostics; free with rcur_string_free. */
RCUR_API rcur_status rcur_diagnostics_json(const rcur_diagnostics* d, char** out);
RCUR_API rcur_status rcur_incoherence(const rcur_matrix* a, size_t r, double* mu1, double* mu2);
RCUR_API rcur_status rcur_relative_error(const rcur_matrix* l, const rcur_matrix* l_hat,
                                         double* out);

typedef struct rcur_bound_check {
  char name[32];
  double lhs;
  double rhs;
  int holds;
} rcur_bound_check;

/* out must hold 5 entries. */
RCUR_API rcur_status rcur_verify_bounds(const rcur_matrix* l, const size_t* cols, size_t col_count,
                                        size_t r, rcur_bound_check* out);

/* ---- benchmark ---- */

typedef struct rcur_bench_report {
  size_t m, n, r;
  double alpha, kappa;
  uint64_t seed;
  double rcur_seconds, rpca_seconds, speedup;
  double rcur_rel_error, rpca_rel_error;
  size_t trials, failures;
} rcur_bench_report;

RCUR_API rcur_status rcur_bench_synth(const rcur_synth_config* instance,
                                      const rcur_cur_config* cfg, size_t trials,
                                      rcur_bench_report* out);
/* truth may be NULL; the two estimates are then scored against each other. */
RCUR_API rcur_status rcur_bench_matrix(const rcur_matrix* d, const rcur_matrix* truth, size_t r,
                                       const rcur_cur_config* cfg, size_t trials, uint64_t seed,
                                       rcur_bench_report* out);
RCUR_API rcur_status rcur_bench_table(const rcur_bench_report* reports, size_t count,
                                      rcur_table_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* RCUR_RCUR_H */
