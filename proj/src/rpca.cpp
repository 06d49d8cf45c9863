#include "rcur/rpca.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rcur/error.hpp"

namespace rcur {

namespace {

using Index = Eigen::Index;

// Singular-vector accuracy requested from the SVD kernel inside the loop.
constexpr double kInnerSvdTol = 1e-10;

double max_incoherence(const SvdFactors& f, Index m, Index n) {
  const double r = static_cast<double>(f.rank());
  const double mu1 = static_cast<double>(m) / r * f.left.rowwise().squaredNorm().maxCoeff();
  const double mu2 = static_cast<double>(n) / r * f.right_t.colwise().squaredNorm().maxCoeff();
  return std::max(mu1, mu2);
}

Index check_rank(const Matrix& d, std::size_t r, const char* who) {
  const Index p = std::min(d.rows(), d.cols());
  if (r < 1 || static_cast<Index>(r) > p)
    fail(ErrorCode::out_of_range, std::string(who) + ": rank " + std::to_string(r) +
                                      " outside [1, " + std::to_string(p) + "]");
  return static_cast<Index>(r);
}

InitResult init_from_svd(const Matrix& d, const SvdFactors& f, std::optional<double> eta) {
  const Index r = f.rank();
  const double sigma1 = f.values(0);
  InitResult out;
  if (eta) {
    if (*eta < 0) fail(ErrorCode::invalid_argument, "init_altproj: negative eta");
    out.eta = *eta;
  } else {
    // Midpoint of the admissible window [1, 3] * mu r sigma_max(L) / (sqrt(mn) sigma_1(D)),
    // with mu and sigma_max(L) read off the rank-r SVD of D itself.
    const double mn = static_cast<double>(d.rows()) * static_cast<double>(d.cols());
    out.eta = 2.0 * max_incoherence(f, d.rows(), d.cols()) * static_cast<double>(r) / std::sqrt(mn);
  }
  out.threshold = out.eta * sigma1;
  out.sparse = hard_threshold(d, out.threshold);
  const Matrix start = f.right_t.transpose();
  out.low_rank =
      svd_truncated(Matrix(d - out.sparse), r, SvdOptions{kInnerSvdTol, SvdMethod::automatic, &start})
          .reconstruct();
  return out;
}

}  // namespace

void RpcaConfig::validate() const {
  if (target_rank < 1) fail(ErrorCode::invalid_argument, "RpcaConfig: target_rank must be >= 1");
  if (!(tol > 0)) fail(ErrorCode::invalid_argument, "RpcaConfig: tol must be > 0");
  if (!(threshold_scale > 0))
    fail(ErrorCode::invalid_argument, "RpcaConfig: threshold_scale must be > 0");
  if (!(threshold_decay > 0 && threshold_decay < 1))
    fail(ErrorCode::invalid_argument, "RpcaConfig: threshold_decay must lie in (0, 1)");
  if (eta_init && *eta_init < 0) fail(ErrorCode::invalid_argument, "RpcaConfig: eta_init < 0");
  if (mu_hint && !(*mu_hint > 0)) fail(ErrorCode::invalid_argument, "RpcaConfig: mu_hint <= 0");
}

Matrix hard_threshold(const Matrix& a, double zeta) {
  if (!(zeta >= 0)) fail(ErrorCode::invalid_argument, "hard_threshold: zeta must be >= 0");
  return a.unaryExpr([zeta](double x) { return std::abs(x) > zeta ? x : 0.0; });
}

DenseMatrix hard_threshold(const DenseMatrix& a, double zeta) {
  return DenseMatrix(hard_threshold(a.values(), zeta));
}

double estimate_incoherence(const Matrix& d, std::size_t r) {
  const Index k = check_rank(d, r, "estimate_incoherence");
  return max_incoherence(svd_truncated(d, k, SvdOptions{1e-8}), d.rows(), d.cols());
}

InitResult init_altproj(const Matrix& d, std::size_t r, std::optional<double> eta) {
  const Index k = check_rank(d, r, "init_altproj");
  require_finite(d, "init_altproj");
  return init_from_svd(d, svd_truncated(d, k, SvdOptions{kInnerSvdTol}), eta);
}

RpcaResult altproj(const Matrix& d, const RpcaConfig& config) {
  config.validate();
  require_finite(d, "altproj");
  const Index r = check_rank(d, config.target_rank, "altproj");
  const Index m = d.rows();
  const Index n = d.cols();

  RpcaResult result;
  const double d_norm = d.norm();
  if (d_norm == 0.0) {
    result.low_rank = Matrix::Zero(m, n);
    result.sparse = Matrix::Zero(m, n);
    result.converged = true;
    return result;
  }

  const SvdFactors top = svd_truncated(d, r, SvdOptions{kInnerSvdTol});
  result.mu_used = config.mu_hint.value_or(max_incoherence(top, m, n));
  // Entries of an incoherent rank-r matrix are bounded by mu r sigma_1 / sqrt(mn);
  // every threshold below is a multiple of this scale.
  const double scale = config.threshold_scale * result.mu_used * static_cast<double>(r) /
                       std::sqrt(static_cast<double>(m) * static_cast<double>(n));

  InitResult init = init_from_svd(d, top, config.eta_init);
  Matrix sparse = std::move(init.sparse);
  Matrix low_rank = std::move(init.low_rank);

  // Consecutive iterates share most of their row space; each SVD starts
  // from the previous one.
  Matrix warm = top.right_t.transpose();

  const Index first_stage = config.stagewise ? 1 : r;
  bool first_stage_done = false;
  bool finished = false;
  for (Index stage = first_stage; stage <= r && !finished; ++stage) {
    for (std::size_t t = 0;; ++t) {
      if (result.iterations >= config.max_iters) {
        finished = true;
        break;
      }

      const Matrix target = d - sparse;
      double next_sigma = 0.0;
      const SvdFactors f =
          svd_leading(target, stage, next_sigma, SvdOptions{kInnerSvdTol, SvdMethod::automatic, &warm});
      warm = f.right_t.transpose();
      low_rank = f.reconstruct();

      const double lead_sigma = config.stagewise ? f.values(stage - 1) : f.values(0);
      const double decayed = std::pow(config.threshold_decay, static_cast<double>(t)) * lead_sigma;
      const double zeta = scale * (next_sigma + decayed);

      const Matrix residual_base = d - low_rank;
      sparse = hard_threshold(residual_base, zeta);
      ++result.iterations;

      const double res = (residual_base - sparse).norm() / d_norm;
      if (first_stage_done && !result.residual_trace.empty() &&
          res > result.residual_trace.back() * (1.0 + 1e-12))
        result.trace_monotone = false;
      result.residual_trace.push_back(res);

      if (res <= config.tol) {
        result.converged = true;
        finished = true;
        break;
      }
      // Within a stage the threshold bottoms out at scale * sigma_{stage+1};
      // once the decaying term is below that floor the next rank is admitted.
      if (stage < r && decayed <= next_sigma) break;
    }
    first_stage_done = true;
  }

  result.residual_norm = (d - low_rank - sparse).norm();
  result.low_rank = std::move(low_rank);
  result.sparse = std::move(sparse);
  return result;
}

RpcaResult altproj(const DenseMatrix& d, const RpcaConfig& config) {
  return altproj(d.values(), config);
}

}  // namespace rcur
