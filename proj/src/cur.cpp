#include "rcur/cur.hpp"

#include <algorithm>
#include <string>

#include "rcur/error.hpp"
#include "rcur/random.hpp"

namespace rcur {

namespace {

using Index = Eigen::Index;

constexpr double kCoreRankTol = 1e-12;
constexpr std::uint64_t kRetryStream = 0x7e7;

struct Incoherence {
  double rows = 1.0;
  double cols = 1.0;
};

Incoherence observed_incoherence(const Matrix& d, std::size_t r) {
  // Feeds a sampling heuristic only; two or three digits are plenty.
  const SvdFactors f = svd_truncated(d, static_cast<Index>(r), SvdOptions{1e-2});
  const double rr = static_cast<double>(r);
  Incoherence mu;
  mu.rows = static_cast<double>(d.rows()) / rr * f.left.rowwise().squaredNorm().maxCoeff();
  mu.cols = static_cast<double>(d.cols()) / rr * f.right_t.colwise().squaredNorm().maxCoeff();
  // Rounding can push a perfectly flat factor a hair below 1.
  mu.rows = std::max(mu.rows, 1.0);
  mu.cols = std::max(mu.cols, 1.0);
  return mu;
}

bool heuristic(const SampleConfig& s) { return std::holds_alternative<SizeHeuristic>(s.size); }

RcurOutcome run_uniform(const Matrix& d, std::size_t r, const RcurConfig& config,
                        std::uint64_t row_seed, std::uint64_t col_seed, Incoherence mu) {
  const auto m = static_cast<std::size_t>(d.rows());
  const auto n = static_cast<std::size_t>(d.cols());
  const std::size_t row_count = config.row_sampling.resolve(m, r, mu.rows);
  const std::size_t col_count = config.col_sampling.resolve(n, r, mu.cols);
  if (row_count < r || col_count < r)
    fail(ErrorCode::insufficient_samples,
         "rcur: need at least r=" + std::to_string(r) + " rows and columns, got |I|=" +
             std::to_string(row_count) + ", |J|=" + std::to_string(col_count));

  const IndexSet rows = sample_uniform(m, row_count, config.row_sampling.mode, row_seed);
  const IndexSet cols = sample_uniform(n, col_count, config.col_sampling.mode, col_seed);

  RpcaConfig rpca = config.rpca;
  rpca.target_rank = r;
  RcurOutcome out;
  out.column_rpca = altproj(submatrix(d, kAll, cols), rpca);
  out.row_rpca = altproj(submatrix(d, rows, kAll), rpca);
  out.model = cur_assemble(out.column_rpca.low_rank, rows, out.row_rpca.low_rank, r, cols);
  return out;
}

}  // namespace

Matrix CurModel::reconstruct() const {
  if (core_right.size() == 0) return c_hat * (u_pinv * r_hat);
  return (c_hat * core_right) * (core_left * r_hat);
}

Vector CurModel::apply(const Vector& x) const { return c_hat * (u_pinv * (r_hat * x)); }

void RcurConfig::validate() const {
  rpca.validate();
  row_sampling.validate();
  col_sampling.validate();
  if (!(theory_eps > 0 && theory_eps < 1))
    fail(ErrorCode::invalid_argument, "RcurConfig: theory_eps must lie in (0, 1)");
  if (!(theory_delta > 0 && theory_delta < 1))
    fail(ErrorCode::invalid_argument, "RcurConfig: theory_delta must lie in (0, 1)");
}

CurModel cur_assemble(const Matrix& c_hat, const IndexSet& rows, const Matrix& r_hat,
                      std::size_t r, IndexSet cols) {
  require_finite(c_hat, "cur_assemble");
  require_finite(r_hat, "cur_assemble");
  if (rows.universe() != static_cast<std::size_t>(c_hat.rows()))
    fail(ErrorCode::invalid_argument, "cur_assemble: row indices do not index C_hat");
  if (static_cast<std::size_t>(r_hat.rows()) != rows.size())
    fail(ErrorCode::invalid_argument, "cur_assemble: R_hat must have |I| rows");
  if (!cols.empty() && cols.size() != static_cast<std::size_t>(c_hat.cols()))
    fail(ErrorCode::invalid_argument, "cur_assemble: C_hat must have |J| columns");
  const std::size_t limit = std::min(rows.size(), static_cast<std::size_t>(c_hat.cols()));
  if (r < 1 || r > limit)
    fail(ErrorCode::out_of_range,
         "cur_assemble: r=" + std::to_string(r) + " outside [1, " + std::to_string(limit) + "]");

  const Matrix core = submatrix(c_hat, rows, kAll);
  const SvdFactors f = svd_truncated(core, static_cast<Index>(r), SvdOptions{1e-13, SvdMethod::dense});
  if (!(f.sigma_min() > kCoreRankTol * f.sigma_max()))
    fail(ErrorCode::rank_deficient_core,
         "cur_assemble: core C_hat(I,:) has numerical rank below " + std::to_string(r));

  CurModel model;
  model.c_hat = c_hat;
  model.r_hat = r_hat;
  model.rows = rows;
  model.cols = std::move(cols);
  model.core_right = f.right_t.transpose();
  model.core_left = f.values.cwiseInverse().asDiagonal() * f.left.transpose();
  model.u_pinv = model.core_right * model.core_left;
  model.r = r;
  return model;
}

CurModel cur_from_indices(const Matrix& l, const IndexSet& rows, const IndexSet& cols,
                          std::size_t r) {
  return cur_assemble(submatrix(l, kAll, cols), rows, submatrix(l, rows, kAll), r, cols);
}

RcurOutcome rcur_uniform(const Matrix& d, std::size_t r, const RcurConfig& config) {
  config.validate();
  require_finite(d, "rcur_uniform");
  const Index p = std::min(d.rows(), d.cols());
  if (r < 1 || static_cast<Index>(r) > p)
    fail(ErrorCode::out_of_range, "rcur_uniform: rank " + std::to_string(r) + " outside [1, " +
                                      std::to_string(p) + "]");

  Incoherence mu;
  const bool auto_size = heuristic(config.row_sampling) || heuristic(config.col_sampling);
  if (auto_size) mu = observed_incoherence(d, r);

  std::uint64_t row_seed = config.row_sampling.seed;
  std::uint64_t col_seed = config.col_sampling.seed;
  RcurOutcome out;
  try {
    out = run_uniform(d, r, config, row_seed, col_seed, mu);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::rank_deficient_core) throw;
    row_seed = derive_seed(row_seed, kRetryStream);
    col_seed = derive_seed(col_seed, kRetryStream);
    out = run_uniform(d, r, config, row_seed, col_seed, mu);
    out.model.retries = 1;
  }
  if (auto_size) {
    out.mu_rows = mu.rows;
    out.mu_cols = mu.cols;
  }
  return out;
}

RcurOutcome rcur_uniform(const DenseMatrix& d, std::size_t r, const RcurConfig& config) {
  return rcur_uniform(d.values(), r, config);
}

CurModel hybrid_refine(const RcurOutcome& stage1, std::size_t r) {
  const CurModel& base = stage1.model;
  const auto k = static_cast<Index>(r);
  // Greedy selection runs on the r x |J| (resp. r x |I|) singular-vector
  // factors of the cleaned column and row matrices.
  const SvdFactors fc = svd_truncated(base.c_hat, k, SvdOptions{1e-12});
  const SvdFactors fr = svd_truncated(base.r_hat, k, SvdOptions{1e-12});
  const IndexSet col_pos = greedy_css(fc.right_t, r);
  const IndexSet row_pos = greedy_css(Matrix(fr.left.transpose()), r);

  const IndexSet cols = base.cols.empty()
                            ? col_pos
                            : base.cols.compose(col_pos);
  const IndexSet rows = base.rows.compose(row_pos);
  const Matrix c1 = submatrix(base.c_hat, kAll, col_pos);
  const Matrix r1 = submatrix(base.r_hat, row_pos, kAll);
  CurModel model = cur_assemble(c1, rows, r1, r, cols);
  model.retries = base.retries;
  return model;
}

RcurOutcome rcur_hybrid(const Matrix& d, std::size_t r, const RcurConfig& config) {
  RcurOutcome out = rcur_uniform(d, r, config);
  try {
    out.model = hybrid_refine(out, r);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::rank_deficient_core || out.model.retries > 0) throw;
    RcurConfig again = config;
    again.row_sampling.seed = derive_seed(config.row_sampling.seed, kRetryStream);
    again.col_sampling.seed = derive_seed(config.col_sampling.seed, kRetryStream);
    out = rcur_uniform(d, r, again);
    out.model = hybrid_refine(out, r);
    out.model.retries = 1;
  }
  return out;
}

RcurOutcome rcur_hybrid(const DenseMatrix& d, std::size_t r, const RcurConfig& config) {
  return rcur_hybrid(d.values(), r, config);
}

double error_bound_rhs(double w_pinv_norm, double v_pinv_norm, double perturbation) {
  if (!(w_pinv_norm >= 0 && v_pinv_norm >= 0 && perturbation >= 0))
    fail(ErrorCode::invalid_argument, "error_bound_rhs: inputs must be >= 0");
  return (7.0 / 6.0 * (w_pinv_norm + v_pinv_norm) + 25.0 / 6.0 * w_pinv_norm * v_pinv_norm +
          1.0 / 6.0) *
         perturbation;
}

}  // namespace rcur
