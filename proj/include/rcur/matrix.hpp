#pragma once

// Dense matrix container and the numerical kernels the rest of the library
// is built on: truncated SVD, Moore-Penrose pseudoinverse, norms and
// index-set submatrix extraction.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace rcur {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Immutable dense real matrix. Constructors reject NaN and Inf.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  explicit DenseMatrix(Matrix values);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix from_row_major(std::size_t rows, std::size_t cols,
                                    std::span<const double> data);
  static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  double operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const Matrix& values() const noexcept { return values_; }
  std::vector<double> to_row_major() const;

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.values_.rows() == b.values_.rows() && a.values_.cols() == b.values_.cols() &&
           a.values_ == b.values_;
  }

 private:
  Matrix values_;
};

/// Ordered list of zero-based indices into [0, universe). Duplicates are kept:
/// sampling with replacement counts multiplicity.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::vector<std::size_t> indices, std::size_t universe);

  static IndexSet all(std::size_t universe);

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  std::size_t universe() const noexcept { return universe_; }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  /// Composition: positions into this set mapped to original indices.
  IndexSet compose(const IndexSet& positions) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> indices_;
  std::size_t universe_ = 0;
};

struct AllIndices {
  friend bool operator==(AllIndices, AllIndices) = default;
};
inline constexpr AllIndices kAll{};
using Selection = std::variant<AllIndices, IndexSet>;

/// Rank-k truncated SVD: left is m x k with orthonormal columns, values are
/// non-increasing, right_t is k x n with orthonormal rows.
struct SvdFactors {
  Matrix left;
  Vector values;
  Matrix right_t;

  Eigen::Index rank() const noexcept { return values.size(); }
  double sigma_max() const { return values(0); }
  double sigma_min() const { return values(values.size() - 1); }
  Matrix reconstruct() const { return left * values.asDiagonal() * right_t; }
};

enum class SvdMethod { automatic, dense, randomized };

struct SvdOptions {
  /// Accuracy target relative to the top singular value.
  double tol = 1e-10;
  SvdMethod method = SvdMethod::automatic;
  /// Optional n x j starting guess for the right singular subspace (used by
  /// the iterative path only; the result is still checked against tol).
  const Matrix* start = nullptr;
};

inline constexpr double kDefaultRankTol = 1e-12;

// Kernels on raw Eigen matrices. These are what the solvers call in their
// inner loops; the DenseMatrix overloads validate and forward.
SvdFactors svd_truncated(const Matrix& a, Eigen::Index k, const SvdOptions& options = {});
/// As svd_truncated, plus an estimate of sigma_{k+1} (exact on the dense
/// path, a Ritz value of the oversampled sketch otherwise; 0 when k = min(m, n)).
SvdFactors svd_leading(const Matrix& a, Eigen::Index k, double& next_value,
                       const SvdOptions& options = {});
SvdFactors svd_full(const Matrix& a);
Matrix pseudoinverse(const Matrix& a, double rank_tol = kDefaultRankTol);
/// Pseudoinverse of the best rank-r approximation of a.
Matrix pseudoinverse_truncated(const Matrix& a, Eigen::Index r);
double spectral_norm(const Matrix& a);
Vector singular_values(const Matrix& a);

SvdFactors svd_truncated(const DenseMatrix& a, std::size_t k, double tol);
DenseMatrix pseudoinverse(const DenseMatrix& a, double rank_tol = kDefaultRankTol);

enum class NormKind { spectral, frobenius, max_abs_entry, l0_row_max, l0_col_max };

double norm(const Matrix& a, NormKind kind);
double norm(const DenseMatrix& a, NormKind kind);

Matrix submatrix(const Matrix& a, const Selection& rows, const Selection& cols);
DenseMatrix submatrix(const DenseMatrix& a, const Selection& rows, const Selection& cols);

void require_finite(const Matrix& a, const char* what);

}  // namespace rcur
