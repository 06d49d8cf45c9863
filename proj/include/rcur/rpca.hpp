#pragma once

// Alternating-projections Robust PCA: one-step initialization and the
// stagewise solver used as the RPCA subroutine of the CUR pipelines.

#include <cstddef>
#include <optional>
#include <vector>

#include "rcur/matrix.hpp"

namespace rcur {

struct RpcaConfig {
  std::size_t target_rank = 1;
  std::size_t max_iters = 100;
  /// Stop once ||D - L - S||_F / ||D||_F falls to this level.
  double tol = 1e-9;
  /// Multiplier xi on the incoherence-scaled threshold.
  double threshold_scale = 1.0;
  /// Geometric decay rho of the threshold within a stage.
  double threshold_decay = 0.5;
  bool stagewise = true;
  /// Initialization threshold parameter eta; nullopt selects it from the data.
  std::optional<double> eta_init;
  /// Incoherence used to scale thresholds; nullopt estimates it from D.
  std::optional<double> mu_hint;

  void validate() const;
};

struct RpcaResult {
  Matrix low_rank;
  Matrix sparse;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> residual_trace;
  /// Frobenius norm of D - low_rank - sparse at exit.
  double residual_norm = 0.0;
  /// False when the residual increased after the first stage completed.
  bool trace_monotone = true;
  double mu_used = 0.0;
};

struct InitResult {
  Matrix low_rank;
  Matrix sparse;
  double eta = 0.0;
  double threshold = 0.0;
};

/// Entries with |a_ij| > zeta are kept, all others set to zero.
Matrix hard_threshold(const Matrix& a, double zeta);
DenseMatrix hard_threshold(const DenseMatrix& a, double zeta);

/// Incoherence max(mu1, mu2) of the rank-r SVD of d, used as the observable
/// stand-in for the unknown incoherence of the low-rank part.
double estimate_incoherence(const Matrix& d, std::size_t r);

InitResult init_altproj(const Matrix& d, std::size_t r, std::optional<double> eta = std::nullopt);

RpcaResult altproj(const Matrix& d, const RpcaConfig& config);
RpcaResult altproj(const DenseMatrix& d, const RpcaConfig& config);

}  // namespace rcur
