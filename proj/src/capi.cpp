#include "rcur/rcur.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "rcur/bench.hpp"
#include "rcur/cur.hpp"
#include "rcur/diagnostics.hpp"
#include "rcur/error.hpp"
#include "rcur/io.hpp"
#include "rcur/synth.hpp"

struct rcur_matrix {
  rcur::Matrix m;
};

struct rcur_rpca_result {
  rcur::RpcaResult r;
};

struct rcur_cur_result {
  rcur::CurModel model;
  rcur_rpca_result column;
  rcur_rpca_result row;
  double mu_rows = 0.0;
  double mu_cols = 0.0;
};

namespace {

using rcur::ErrorCode;
using Index = Eigen::Index;

thread_local std::string g_last_error;

rcur_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return RCUR_E_INVALID_ARGUMENT;
    case ErrorCode::out_of_range: return RCUR_E_OUT_OF_RANGE;
    case ErrorCode::non_finite: return RCUR_E_NON_FINITE;
    case ErrorCode::rank_deficient: return RCUR_E_RANK_DEFICIENT;
    case ErrorCode::rank_deficient_core: return RCUR_E_RANK_DEFICIENT_CORE;
    case ErrorCode::insufficient_samples: return RCUR_E_INSUFFICIENT_SAMPLES;
    case ErrorCode::degenerate: return RCUR_E_DEGENERATE;
    case ErrorCode::io: return RCUR_E_IO;
    case ErrorCode::parse: return RCUR_E_PARSE;
  }
  return RCUR_E_INTERNAL;
}

template <class F>
rcur_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return RCUR_OK;
  } catch (const rcur::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RCUR_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RCUR_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) rcur::fail(ErrorCode::invalid_argument, std::string(what) + " is NULL");
}

rcur_matrix* wrap(rcur::Matrix m) { return new rcur_matrix{std::move(m)}; }

rcur::IndexSet index_set(const size_t* idx, size_t count, size_t universe) {
  if (count > 0) need(idx, "index array");
  return rcur::IndexSet(std::vector<std::size_t>(idx, idx + count), universe);
}

std::optional<double> nan_to_auto(double v) {
  if (std::isnan(v)) return std::nullopt;
  return v;
}

rcur::RpcaConfig to_cpp(const rcur_rpca_config& c) {
  rcur::RpcaConfig out;
  out.target_rank = c.target_rank;
  out.max_iters = c.max_iters;
  out.tol = c.tol;
  out.threshold_scale = c.threshold_scale;
  out.threshold_decay = c.threshold_decay;
  out.stagewise = c.stagewise != 0;
  out.eta_init = nan_to_auto(c.eta_init);
  out.mu_hint = nan_to_auto(c.mu_hint);
  return out;
}

rcur::SampleConfig to_cpp(const rcur_sample_spec& s) {
  rcur::SampleConfig out;
  out.mode = s.mode == RCUR_WITH_REPLACEMENT ? rcur::SampleMode::with_replacement
                                             : rcur::SampleMode::without_replacement;
  out.seed = s.seed;
  if (s.count > 0) {
    out.size = std::size_t{s.count};
  } else {
    rcur::SizeHeuristic h;
    h.c = s.c;
    h.variant = static_cast<rcur::SizeVariant>(s.variant);
    out.size = h;
  }
  return out;
}

rcur::RcurConfig to_cpp(const rcur_cur_config& c) {
  rcur::RcurConfig out;
  out.rpca = to_cpp(c.rpca);
  out.row_sampling = to_cpp(c.rows);
  out.col_sampling = to_cpp(c.cols);
  out.theory_eps = c.theory_eps;
  out.theory_delta = c.theory_delta;
  return out;
}

rcur::SynthConfig to_cpp(const rcur_synth_config& c) {
  return {c.m, c.n, c.r, c.kappa, c.alpha, c.outlier_magnitude, c.seed};
}

rcur::SizeVariant variant_of(rcur_size_variant v) {
  switch (v) {
    case RCUR_SIZE_LOG_N: return rcur::SizeVariant::log_n;
    case RCUR_SIZE_LOG_RN: return rcur::SizeVariant::log_rn;
    case RCUR_SIZE_PAPER_VIDEO: return rcur::SizeVariant::paper_video;
  }
  rcur::fail(ErrorCode::invalid_argument, "unknown size variant");
}

void fill(const rcur::BenchReport& b, rcur_bench_report* out) {
  *out = {b.m,           b.n,           b.r,          b.alpha,          b.kappa,
          b.seed,        b.rcur_seconds, b.rpca_seconds, b.speedup,     b.rcur_rel_error,
          b.rpca_rel_error, b.trials,   b.failures};
}

rcur::BenchReport from_c(const rcur_bench_report& b) {
  rcur::BenchReport out;
  out.m = b.m;
  out.n = b.n;
  out.r = b.r;
  out.alpha = b.alpha;
  out.kappa = b.kappa;
  out.seed = b.seed;
  out.rcur_seconds = b.rcur_seconds;
  out.rpca_seconds = b.rpca_seconds;
  out.speedup = b.speedup;
  out.rcur_rel_error = b.rcur_rel_error;
  out.rpca_rel_error = b.rpca_rel_error;
  out.trials = b.trials;
  out.failures = b.failures;
  return out;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rcur_cur_result* wrap(rcur::RcurOutcome o) {
  auto* res = new rcur_cur_result;
  res->model = std::move(o.model);
  res->column.r = std::move(o.column_rpca);
  res->row.r = std::move(o.row_rpca);
  res->mu_rows = o.mu_rows;
  res->mu_cols = o.mu_cols;
  return res;
}

}  // namespace

extern "C" {

const char* rcur_version(void) { return "1.0.0"; }

const char* rcur_last_error(void) { return g_last_error.c_str(); }

const char* rcur_status_name(rcur_status status) {
  switch (status) {
    case RCUR_OK: return "ok";
    case RCUR_E_INVALID_ARGUMENT: return "invalid_argument";
    case RCUR_E_OUT_OF_RANGE: return "out_of_range";
    case RCUR_E_NON_FINITE: return "non_finite";
    case RCUR_E_RANK_DEFICIENT: return "rank_deficient";
    case RCUR_E_RANK_DEFICIENT_CORE: return "rank_deficient_core";
    case RCUR_E_INSUFFICIENT_SAMPLES: return "insufficient_samples";
    case RCUR_E_DEGENERATE: return "degenerate";
    case RCUR_E_IO: return "io";
    case RCUR_E_PARSE: return "parse";
    case RCUR_E_INTERNAL: return "internal";
  }
  return "unknown";
}

void rcur_string_free(char* s) { std::free(s); }

rcur_status rcur_matrix_create(size_t rows, size_t cols, const double* data, rcur_matrix** out) {
  return guarded([&] {
    need(out, "out");
    rcur::Matrix m = rcur::Matrix::Zero(static_cast<Index>(rows), static_cast<Index>(cols));
    if (data != nullptr)
      for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
          m(static_cast<Index>(i), static_cast<Index>(j)) = data[i * cols + j];
    rcur::require_finite(m, "rcur_matrix_create");
    *out = wrap(std::move(m));
  });
}

void rcur_matrix_destroy(rcur_matrix* m) { delete m; }

size_t rcur_matrix_rows(const rcur_matrix* m) { return m ? static_cast<size_t>(m->m.rows()) : 0; }

size_t rcur_matrix_cols(const rcur_matrix* m) { return m ? static_cast<size_t>(m->m.cols()) : 0; }

rcur_status rcur_matrix_copy(const rcur_matrix* m, double* out) {
  return guarded([&] {
    need(m, "matrix");
    if (m->m.size() > 0) need(out, "out");
    const Index cols = m->m.cols();
    for (Index i = 0; i < m->m.rows(); ++i)
      for (Index j = 0; j < cols; ++j) out[i * cols + j] = m->m(i, j);
  });
}

rcur_status rcur_matrix_load(const char* path, rcur_matrix** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = wrap(rcur::load_matrix(path));
  });
}

rcur_status rcur_matrix_save(const rcur_matrix* m, const char* path, rcur_format format) {
  return guarded([&] {
    need(m, "matrix");
    need(path, "path");
    rcur::save_matrix(m->m, path,
                      format == RCUR_FORMAT_CSV ? rcur::MatrixFormat::csv : rcur::MatrixFormat::bin);
  });
}

rcur_status rcur_matrix_columns(const rcur_matrix* m, const size_t* cols, size_t count,
                                rcur_matrix** out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    const auto set = index_set(cols, count, static_cast<size_t>(m->m.cols()));
    *out = wrap(rcur::submatrix(m->m, rcur::kAll, set));
  });
}

rcur_status rcur_matrix_subtract(const rcur_matrix* a, const rcur_matrix* b, rcur_matrix** out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    if (a->m.rows() != b->m.rows() || a->m.cols() != b->m.cols())
      rcur::fail(ErrorCode::invalid_argument, "rcur_matrix_subtract: shape mismatch");
    *out = wrap(a->m - b->m);
  });
}

rcur_status rcur_frames_load(const char* dir, rcur_matrix** out, size_t* height, size_t* width) {
  return guarded([&] {
    need(dir, "dir");
    need(out, "out");
    rcur::FrameMatrix fm = rcur::frames_to_matrix(dir);
    if (height) *height = fm.height;
    if (width) *width = fm.width;
    *out = wrap(std::move(fm.data));
  });
}

rcur_status rcur_frames_save(const rcur_matrix* m, size_t height, size_t width, const char* dir,
                             const char* prefix) {
  return guarded([&] {
    need(m, "matrix");
    need(dir, "dir");
    rcur::matrix_to_frames(m->m, height, width, dir, prefix ? prefix : "frame");
  });
}

void rcur_synth_config_default(rcur_synth_config* cfg) {
  if (cfg == nullptr) return;
  const rcur::SynthConfig d;
  *cfg = {d.m, d.n, d.r, d.kappa, d.alpha, d.outlier_magnitude, d.seed};
}

void rcur_video_config_default(rcur_video_config* cfg) {
  if (cfg == nullptr) return;
  const rcur::VideoConfig d;
  *cfg = {d.frames, d.height, d.width, d.r, d.alpha, d.blob_size, d.seed};
}

rcur_status rcur_synth_generate(const rcur_synth_config* cfg, rcur_matrix** observed,
                                rcur_matrix** low_rank, rcur_matrix** sparse) {
  return guarded([&] {
    need(cfg, "cfg");
    rcur::GroundTruth gt = rcur::generate(to_cpp(*cfg));
    if (observed) *observed = wrap(std::move(gt.observed));
    if (low_rank) *low_rank = wrap(std::move(gt.low_rank));
    if (sparse) *sparse = wrap(std::move(gt.sparse));
  });
}

rcur_status rcur_video_generate(const rcur_video_config* cfg, rcur_matrix** observed,
                                rcur_matrix** low_rank, rcur_matrix** sparse, rcur_matrix** mask) {
  return guarded([&] {
    need(cfg, "cfg");
    rcur::VideoConfig vc{cfg->frames, cfg->height, cfg->width, cfg->r,
                         cfg->alpha,  cfg->blob_size, cfg->seed};
    rcur::GroundTruth gt = rcur::gen_video(vc);
    if (mask) *mask = wrap(gt.foreground_mask->cast<double>());
    if (observed) *observed = wrap(std::move(gt.observed));
    if (low_rank) *low_rank = wrap(std::move(gt.low_rank));
    if (sparse) *sparse = wrap(std::move(gt.sparse));
  });
}

rcur_status rcur_synth_save(const rcur_synth_config* cfg, const char* dir, rcur_format format,
                            char** manifest) {
  return guarded([&] {
    need(cfg, "cfg");
    need(dir, "dir");
    const auto mf = rcur::save_instance(
        to_cpp(*cfg), dir, format == RCUR_FORMAT_CSV ? rcur::MatrixFormat::csv : rcur::MatrixFormat::bin);
    if (manifest) *manifest = dup_string(rcur::to_json(mf));
  });
}

rcur_status rcur_video_save(const rcur_video_config* cfg, const char* dir, rcur_format format,
                            char** manifest) {
  return guarded([&] {
    need(cfg, "cfg");
    need(dir, "dir");
    const rcur::VideoConfig vc{cfg->frames, cfg->height, cfg->width, cfg->r,
                               cfg->alpha,  cfg->blob_size, cfg->seed};
    const auto mf = rcur::save_instance(
        vc, dir, format == RCUR_FORMAT_CSV ? rcur::MatrixFormat::csv : rcur::MatrixFormat::bin);
    if (manifest) *manifest = dup_string(rcur::to_json(mf));
  });
}

rcur_status rcur_truth_for(const char* input, char** out) {
  return guarded([&] {
    need(input, "input");
    need(out, "out");
    *out = nullptr;
    if (const auto p = rcur::truth_for(input)) *out = dup_string(p->string());
  });
}

void rcur_rpca_config_default(rcur_rpca_config* cfg) {
  if (cfg == nullptr) return;
  const rcur::RpcaConfig d;
  *cfg = {d.target_rank,     d.max_iters,       d.tol,
          d.threshold_scale, d.threshold_decay, d.stagewise ? 1 : 0,
          std::nan(""),      std::nan("")};
}

rcur_status rcur_altproj(const rcur_matrix* d, const rcur_rpca_config* cfg,
                         rcur_rpca_result** out) {
  return guarded([&] {
    need(d, "matrix");
    need(cfg, "cfg");
    need(out, "out");
    *out = new rcur_rpca_result{rcur::altproj(d->m, to_cpp(*cfg))};
  });
}

void rcur_rpca_result_destroy(rcur_rpca_result* res) { delete res; }

rcur_status rcur_rpca_result_low_rank(const rcur_rpca_result* res, rcur_matrix** out) {
  return guarded([&] {
    need(res, "result");
    need(out, "out");
    *out = wrap(res->r.low_rank);
  });
}

rcur_status rcur_rpca_result_sparse(const rcur_rpca_result* res, rcur_matrix** out) {
  return guarded([&] {
    need(res, "result");
    need(out, "out");
    *out = wrap(res->r.sparse);
  });
}

size_t rcur_rpca_result_iterations(const rcur_rpca_result* res) { return res ? res->r.iterations : 0; }

int rcur_rpca_result_converged(const rcur_rpca_result* res) { return res && res->r.converged; }

int rcur_rpca_result_trace_monotone(const rcur_rpca_result* res) {
  return res && res->r.trace_monotone;
}

double rcur_rpca_result_residual_norm(const rcur_rpca_result* res) {
  return res ? res->r.residual_norm : std::nan("");
}

double rcur_rpca_result_mu_used(const rcur_rpca_result* res) {
  return res ? res->r.mu_used : std::nan("");
}

size_t rcur_rpca_result_trace_length(const rcur_rpca_result* res) {
  return res ? res->r.residual_trace.size() : 0;
}

const double* rcur_rpca_result_trace(const rcur_rpca_result* res) {
  return res ? res->r.residual_trace.data() : nullptr;
}

rcur_status rcur_sample_size(size_t universe, size_t r, double mu, double c,
                             rcur_size_variant variant, size_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = rcur::sample_size(universe, r, mu, c, variant_of(variant));
  });
}

rcur_status rcur_sample_uniform(size_t universe, size_t count, rcur_sample_mode mode, uint64_t seed,
                                size_t* out) {
  return guarded([&] {
    if (count > 0) need(out, "out");
    const auto set = rcur::sample_uniform(universe, count,
                                          mode == RCUR_WITH_REPLACEMENT
                                              ? rcur::SampleMode::with_replacement
                                              : rcur::SampleMode::without_replacement,
                                          seed);
    std::copy(set.begin(), set.end(), out);
  });
}

rcur_status rcur_greedy_css(const rcur_matrix* x, size_t k, size_t* out, double* criteria) {
  return guarded([&] {
    need(x, "matrix");
    need(out, "out");
    const rcur::GreedyResult g = rcur::greedy_css_trace(x->m, k);
    std::copy(g.selected.begin(), g.selected.end(), out);
    if (criteria != nullptr)
      for (size_t i = 0; i < g.steps.size(); ++i) criteria[i] = g.steps[i].criterion;
  });
}

void rcur_cur_config_default(rcur_cur_config* cfg) {
  if (cfg == nullptr) return;
  const rcur::RcurConfig d;
  rcur_rpca_config_default(&cfg->rpca);
  cfg->rows = {0, 5.0, RCUR_SIZE_LOG_N, RCUR_WITHOUT_REPLACEMENT, d.row_sampling.seed};
  cfg->cols = {0, 5.0, RCUR_SIZE_LOG_N, RCUR_WITHOUT_REPLACEMENT, d.col_sampling.seed};
  cfg->theory_eps = d.theory_eps;
  cfg->theory_delta = d.theory_delta;
}

rcur_status rcur_cur_uniform(const rcur_matrix* d, size_t r, const rcur_cur_config* cfg,
                             rcur_cur_result** out) {
  return guarded([&] {
    need(d, "matrix");
    need(cfg, "cfg");
    need(out, "out");
    *out = wrap(rcur::rcur_uniform(d->m, r, to_cpp(*cfg)));
  });
}

rcur_status rcur_cur_hybrid(const rcur_matrix* d, size_t r, const rcur_cur_config* cfg,
                            rcur_cur_result** out) {
  return guarded([&] {
    need(d, "matrix");
    need(cfg, "cfg");
    need(out, "out");
    *out = wrap(rcur::rcur_hybrid(d->m, r, to_cpp(*cfg)));
  });
}

void rcur_cur_result_destroy(rcur_cur_result* res) { delete res; }

rcur_status rcur_cur_result_reconstruct(const rcur_cur_result* res, rcur_matrix** out) {
  return guarded([&] {
    need(res, "result");
    need(out, "out");
    *out = wrap(res->model.reconstruct());
  });
}

rcur_status rcur_cur_result_c_hat(const rcur_cur_result* res, rcur_matrix** out) {
  return guarded([&] {
    need(res, "result");
    need(out, "out");
    *out = wrap(res->model.c_hat);
  });
}

rcur_status rcur_cur_result_r_hat(const rcur_cur_result* res, rcur_matrix** out) {
  return guarded([&] {
    need(res, "result");
    need(out, "out");
    *out = wrap(res->model.r_hat);
  });
}

rcur_status rcur_cur_result_u_pinv(const rcur_cur_result* res, rcur_matrix** out) {
  return guarded([&] {
    need(res, "result");
    need(out, "out");
    *out = wrap(res->model.u_pinv);
  });
}

size_t rcur_cur_result_row_count(const rcur_cur_result* res) { return res ? res->model.rows.size() : 0; }

size_t rcur_cur_result_col_count(const rcur_cur_result* res) { return res ? res->model.cols.size() : 0; }

const size_t* rcur_cur_result_rows(const rcur_cur_result* res) {
  return res ? res->model.rows.indices().data() : nullptr;
}

const size_t* rcur_cur_result_cols(const rcur_cur_result* res) {
  return res ? res->model.cols.indices().data() : nullptr;
}

size_t rcur_cur_result_retries(const rcur_cur_result* res) { return res ? res->model.retries : 0; }

double rcur_cur_result_mu_rows(const rcur_cur_result* res) { return res ? res->mu_rows : 0.0; }

double rcur_cur_result_mu_cols(const rcur_cur_result* res) { return res ? res->mu_cols : 0.0; }

const rcur_rpca_result* rcur_cur_result_rpca(const rcur_cur_result* res, int which) {
  if (res == nullptr) return nullptr;
  return which == 0 ? &res->column : &res->row;
}

double rcur_error_bound_rhs(double w_pinv_norm, double v_pinv_norm, double perturbation) {
  double out = std::nan("");
  guarded([&] { out = rcur::error_bound_rhs(w_pinv_norm, v_pinv_norm, perturbation); });
  return out;
}

rcur_status rcur_diagnose(const rcur_matrix* low_rank, size_t r, const rcur_matrix* sparse,
                          const rcur_matrix* estimate, const size_t* rows, size_t row_count,
                          const size_t* cols, size_t col_count, rcur_diagnostics* out) {
  return guarded([&] {
    need(low_rank, "low_rank");
    need(out, "out");
    const auto m = static_cast<size_t>(low_rank->m.rows());
    const auto n = static_cast<size_t>(low_rank->m.cols());
    std::optional<rcur::IndexSet> row_set, col_set;
    if (rows != nullptr) row_set = index_set(rows, row_count, m);
    if (cols != nullptr) col_set = index_set(cols, col_count, n);
    rcur::DiagnoseInput in;
    in.low_rank = &low_rank->m;
    in.r = r;
    in.sparse = sparse ? &sparse->m : nullptr;
    in.estimate = estimate ? &estimate->m : nullptr;
    in.rows = row_set ? &*row_set : nullptr;
    in.cols = col_set ? &*col_set : nullptr;
    const rcur::DiagnosticsReport rep = rcur::diagnose(in);
    *out = {};
    out->mu1 = rep.mu1;
    out->mu2 = rep.mu2;
    out->alpha_row = rep.alpha_row;
    out->alpha_col = rep.alpha_col;
    out->alpha = rep.alpha;
    out->alpha_row_tol = rep.alpha_row_tol;
    out->alpha_col_tol = rep.alpha_col_tol;
    out->alpha_tol = rep.alpha_tol;
    out->kappa = rep.kappa;
    out->rank_numeric = rep.rank_numeric;
    out->has_rel_spectral_error = rep.rel_spectral_error.has_value();
    out->rel_spectral_error = rep.rel_spectral_error.value_or(std::nan(""));
    out->has_beta = rep.beta.has_value();
    out->beta = rep.beta.value_or(std::nan(""));
    out->has_beta_prime = rep.beta_prime.has_value();
    out->beta_prime = rep.beta_prime.value_or(std::nan(""));
  });
}

rcur_status rcur_diagnostics_json(const rcur_diagnostics* d, char** out) {
  return guarded([&] {
    need(d, "diagnostics");
    need(out, "out");
    rcur::DiagnosticsReport rep;
    rep.mu1 = d->mu1;
    rep.mu2 = d->mu2;
    rep.alpha_row = d->alpha_row;
    rep.alpha_col = d->alpha_col;
    rep.alpha = d->alpha;
    rep.alpha_row_tol = d->alpha_row_tol;
    rep.alpha_col_tol = d->alpha_col_tol;
    rep.alpha_tol = d->alpha_tol;
    rep.kappa = d->kappa;
    rep.rank_numeric = d->rank_numeric;
    if (d->has_rel_spectral_error) rep.rel_spectral_error = d->rel_spectral_error;
    if (d->has_beta) rep.beta = d->beta;
    if (d->has_beta_prime) rep.beta_prime = d->beta_prime;
    *out = dup_string(rcur::to_json(rep));
  });
}

rcur_status rcur_incoherence(const rcur_matrix* a, size_t r, double* mu1, double* mu2) {
  return guarded([&] {
    need(a, "matrix");
    const rcur::Incoherence2 mu = rcur::incoherence(a->m, r);
    if (mu1) *mu1 = mu.mu1;
    if (mu2) *mu2 = mu.mu2;
  });
}

rcur_status rcur_relative_error(const rcur_matrix* l, const rcur_matrix* l_hat, double* out) {
  return guarded([&] {
    need(l, "l");
    need(l_hat, "l_hat");
    need(out, "out");
    *out = rcur::relative_error(l->m, l_hat->m);
  });
}

rcur_status rcur_verify_bounds(const rcur_matrix* l, const size_t* cols, size_t col_count, size_t r,
                               rcur_bound_check* out) {
  return guarded([&] {
    need(l, "l");
    need(out, "out");
    const auto set = index_set(cols, col_count, static_cast<size_t>(l->m.cols()));
    const auto checks = rcur::verify_bounds(l->m, rcur::submatrix(l->m, rcur::kAll, set), set, r);
    for (size_t i = 0; i < checks.size(); ++i) {
      out[i] = {};
      std::strncpy(out[i].name, checks[i].name.c_str(), sizeof out[i].name - 1);
      out[i].lhs = checks[i].lhs;
      out[i].rhs = checks[i].rhs;
      out[i].holds = checks[i].holds;
    }
  });
}

rcur_status rcur_bench_synth(const rcur_synth_config* instance, const rcur_cur_config* cfg,
                             size_t trials, rcur_bench_report* out) {
  return guarded([&] {
    need(instance, "instance");
    need(cfg, "cfg");
    need(out, "out");
    fill(rcur::bench_compare(to_cpp(*instance), to_cpp(*cfg), trials), out);
  });
}

rcur_status rcur_bench_matrix(const rcur_matrix* d, const rcur_matrix* truth, size_t r,
                              const rcur_cur_config* cfg, size_t trials, uint64_t seed,
                              rcur_bench_report* out) {
  return guarded([&] {
    need(d, "matrix");
    need(cfg, "cfg");
    need(out, "out");
    fill(rcur::bench_compare(d->m, truth ? &truth->m : nullptr, r, to_cpp(*cfg), trials, seed),
         out);
  });
}

rcur_status rcur_bench_table(const rcur_bench_report* reports, size_t count,
                             rcur_table_format format, char** out) {
  return guarded([&] {
    if (count > 0) need(reports, "reports");
    need(out, "out");
    std::vector<rcur::BenchReport> list;
    for (size_t i = 0; i < count; ++i) list.push_back(from_c(reports[i]));
    *out = dup_string(rcur::emit_table(
        list, format == RCUR_TABLE_CSV ? rcur::TableFormat::csv : rcur::TableFormat::markdown));
  });
}

}  // extern "C"
