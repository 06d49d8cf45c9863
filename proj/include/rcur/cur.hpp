#pragma once

// CUR assembly and the two robust pipelines: uniform sampling, and uniform
// sampling followed by greedy selection of exactly r columns and rows.

#include <cstddef>
#include <optional>

#include "rcur/matrix.hpp"
#include "rcur/rpca.hpp"
#include "rcur/sampling.hpp"

namespace rcur {

/// L_hat = C_hat * U_pinv * R_hat, with U_pinv the pseudoinverse of the
/// rank-r truncation of C_hat(I, :). L_hat is never stored.
struct CurModel {
  Matrix c_hat;
  Matrix r_hat;
  IndexSet rows;
  IndexSet cols;
  Matrix u_pinv;
  /// u_pinv = core_right * core_left, the rank-r factors (|J| x r, r x |I|).
  Matrix core_right;
  Matrix core_left;
  std::size_t r = 0;
  /// Number of resampling rounds spent after a rank-deficient core.
  std::size_t retries = 0;

  Matrix reconstruct() const;
  /// L_hat * x evaluated right to left.
  Vector apply(const Vector& x) const;
};

struct RcurConfig {
  RpcaConfig rpca;
  SampleConfig row_sampling;
  SampleConfig col_sampling{SampleMode::without_replacement, 1};
  bool hybrid = false;
  double theory_eps = 0.1;
  double theory_delta = 0.5;

  void validate() const;
};

struct RcurOutcome {
  CurModel model;
  RpcaResult column_rpca;  // on D(:, J)
  RpcaResult row_rpca;     // on D(I, :)
  /// Incoherence estimates of D used by heuristic sample sizes (0 if unused).
  double mu_rows = 0.0;
  double mu_cols = 0.0;
};

/// cols may be left empty when only the row selection matters.
CurModel cur_assemble(const Matrix& c_hat, const IndexSet& rows, const Matrix& r_hat,
                      std::size_t r, IndexSet cols = {});

/// Plain CUR of l on the given skeleton: C = l(:, J), R = l(I, :).
CurModel cur_from_indices(const Matrix& l, const IndexSet& rows, const IndexSet& cols,
                          std::size_t r);

RcurOutcome rcur_uniform(const Matrix& d, std::size_t r, const RcurConfig& config);
RcurOutcome rcur_uniform(const DenseMatrix& d, std::size_t r, const RcurConfig& config);

/// Greedy stage on top of a finished uniform run: picks r columns of C_hat
/// and r rows of R_hat and reassembles. Indices stay in the original ranges.
CurModel hybrid_refine(const RcurOutcome& stage1, std::size_t r);

RcurOutcome rcur_hybrid(const Matrix& d, std::size_t r, const RcurConfig& config);
RcurOutcome rcur_hybrid(const DenseMatrix& d, std::size_t r, const RcurConfig& config);

/// Right-hand side of the CUR perturbation bound given ||W_L(I,:)^+||,
/// ||V_L(J,:)^+|| and the perturbation size.
double error_bound_rhs(double w_pinv_norm, double v_pinv_norm, double perturbation);

}  // namespace rcur
