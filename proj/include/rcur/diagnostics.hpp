#pragma once

// Measured counterparts of the quantities the recovery guarantees are stated
// in: incoherence, sparsity, beta factors, condition numbers and errors.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rcur/matrix.hpp"

namespace rcur {

struct Incoherence2 {
  double mu1 = 0.0;
  double mu2 = 0.0;
};

/// Tight incoherence constants of the rank-r SVD of a:
/// mu1 = (m/r) max_i |W^T e_i|^2, mu2 = (n/r) max_j |V^T e_j|^2.
Incoherence2 incoherence(const Matrix& a, std::size_t r);
Incoherence2 incoherence(const DenseMatrix& a, std::size_t r);
Incoherence2 incoherence(const SvdFactors& f);

struct SparsityLevel {
  double alpha_row = 0.0;  // max nonzeros in a row / n
  double alpha_col = 0.0;  // max nonzeros in a column / m
  double alpha() const { return alpha_row > alpha_col ? alpha_row : alpha_col; }
};

/// Entries with |x| > tol count as nonzero; tol = 0 is the exact count.
SparsityLevel sparsity_level(const Matrix& s, double tol = 0.0);
SparsityLevel sparsity_level(const DenseMatrix& s, double tol = 0.0);

struct BetaFactor {
  double value = 0.0;  // +inf when rank_deficient
  bool rank_deficient = false;
};

/// sqrt(|idx| / N) * ||F(idx, :)^+||_2 for an N x r singular-vector factor F.
BetaFactor beta_factor(const Matrix& factor, const IndexSet& indices);

/// ||L - L_hat||_2 / ||L||_2.
double relative_error(const Matrix& l, const Matrix& l_hat);
double relative_error(const DenseMatrix& l, const DenseMatrix& l_hat);

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline constexpr double kBoundSlack = 1e-8;

/// Submatrix inheritance bounds for C = L(:, J): left incoherence, right
/// incoherence, condition number, spectral norm and pseudoinverse norm.
std::vector<BoundCheck> verify_bounds(const Matrix& l, const Matrix& c, const IndexSet& cols,
                                      std::size_t r);

struct DiagnosticsReport {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double alpha_row = 0.0;
  double alpha_col = 0.0;
  double alpha = 0.0;
  /// Same three at a 1e-12 magnitude cutoff, for thresholded solver output.
  double alpha_row_tol = 0.0;
  double alpha_col_tol = 0.0;
  double alpha_tol = 0.0;
  double kappa = 0.0;
  /// Count of singular values above 1e-10 sigma_1 among the leading r + 1.
  std::size_t rank_numeric = 0;
  std::optional<double> rel_spectral_error;
  std::optional<double> beta;
  std::optional<double> beta_prime;
};

struct DiagnoseInput {
  const Matrix* low_rank = nullptr;  // required
  std::size_t r = 1;
  const Matrix* sparse = nullptr;
  const Matrix* estimate = nullptr;
  const IndexSet* rows = nullptr;  // feeds beta_prime
  const IndexSet* cols = nullptr;  // feeds beta
};

DiagnosticsReport diagnose(const DiagnoseInput& input);

/// Flat JSON object; absent optionals serialize as null.
std::string to_json(const DiagnosticsReport& report);

}  // namespace rcur
