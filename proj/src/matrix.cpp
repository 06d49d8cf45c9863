#include "rcur/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "rcur/error.hpp"
#include "rcur/random.hpp"

namespace rcur {

namespace {

using Index = Eigen::Index;

constexpr Index kOversampling = 10;
constexpr int kMinSubspaceIters = 1;
constexpr int kMaxSubspaceIters = 40;
constexpr Index kDenseCutoff = 64;
constexpr std::uint64_t kSketchSeed = 0x5eed5eed2024ULL;

Index to_index(std::size_t v) { return static_cast<Index>(v); }

Matrix orthonormal_basis(const Matrix& y) {
  Eigen::HouseholderQR<Matrix> qr(y);
  return qr.householderQ() * Matrix::Identity(y.rows(), y.cols());
}

SvdFactors take_leading(const Matrix& u, const Vector& s, const Matrix& v, Index k) {
  SvdFactors f;
  f.left = u.leftCols(k);
  f.values = s.head(k);
  f.right_t = v.leftCols(k).transpose();
  return f;
}

SvdFactors dense_svd(const Matrix& a, Index k, double* next_value = nullptr) {
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  if (next_value != nullptr) *next_value = s.size() > k ? s(k) : 0.0;
  return take_leading(svd.matrixU(), s, svd.matrixV(), k);
}

// Subspace iteration with oversampling. Returns false when the leading k Ritz
// triplets have not reached tol * sigma_1 within the iteration cap.
bool randomized_svd(const Matrix& a, Index k, const SvdOptions& options, SvdFactors& out,
                    double* next_value) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Index l = std::min(k + kOversampling, std::min(m, n));

  Matrix omega(n, l);
  Index seeded = 0;
  if (options.start != nullptr && options.start->rows() == n) {
    seeded = std::min(l, options.start->cols());
    omega.leftCols(seeded) = options.start->leftCols(seeded);
  }
  SplitMix64 rng(kSketchSeed);
  std::normal_distribution<double> gauss;
  for (Index j = seeded; j < l; ++j)
    for (Index i = 0; i < n; ++i) omega(i, j) = gauss(rng);

  Matrix q = orthonormal_basis(a * omega);
  Matrix b = q.transpose() * a;
  for (int it = 1; it <= kMaxSubspaceIters; ++it) {
    // b^T = A^T q, so each sweep costs two products with A.
    q = orthonormal_basis(a * orthonormal_basis(b.transpose()));
    b = q.transpose() * a;
    if (it < kMinSubspaceIters) continue;

    Eigen::BDCSVD<Matrix> small(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = small.singularValues();
    const Matrix u = q * small.matrixU().leftCols(k);
    const Matrix v = small.matrixV().leftCols(k);

    // A^T u_i = s_i v_i holds by construction; check the other half.
    const Matrix residual = a * v - u * s.head(k).asDiagonal();
    const double limit = options.tol * std::max(s(0), std::numeric_limits<double>::min());
    bool converged = true;
    for (Index i = 0; i < k && converged; ++i) converged = residual.col(i).norm() <= limit;
    if (converged || s(0) == 0.0) {
      out.left = u;
      out.values = s.head(k);
      out.right_t = v.transpose();
      if (next_value != nullptr) *next_value = s.size() > k ? s(k) : 0.0;
      return true;
    }
  }
  return false;
}

}  // namespace

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) fail(ErrorCode::non_finite, std::string(what) + ": non-finite entry");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : values_(Matrix::Zero(to_index(rows), to_index(cols))) {}

DenseMatrix::DenseMatrix(Matrix values) : values_(std::move(values)) {
  require_finite(values_, "DenseMatrix");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  values_.resize(to_index(r), to_index(c));
  Index i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) fail(ErrorCode::invalid_argument, "DenseMatrix: ragged initializer");
    Index j = 0;
    for (double x : row) values_(i, j++) = x;
    ++i;
  }
  require_finite(values_, "DenseMatrix");
}

DenseMatrix DenseMatrix::from_row_major(std::size_t rows, std::size_t cols,
                                        std::span<const double> data) {
  if (data.size() != rows * cols)
    fail(ErrorCode::invalid_argument,
         "DenseMatrix: expected " + std::to_string(rows * cols) + " values, got " +
             std::to_string(data.size()));
  Matrix m(to_index(rows), to_index(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(to_index(i), to_index(j)) = data[i * cols + j];
  return DenseMatrix(std::move(m));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  return DenseMatrix(Matrix::Identity(to_index(n), to_index(n)));
}

std::vector<double> DenseMatrix::to_row_major() const {
  std::vector<double> out;
  out.reserve(rows() * cols());
  for (Index i = 0; i < values_.rows(); ++i)
    for (Index j = 0; j < values_.cols(); ++j) out.push_back(values_(i, j));
  return out;
}

IndexSet::IndexSet(std::vector<std::size_t> indices, std::size_t universe)
    : indices_(std::move(indices)), universe_(universe) {
  for (std::size_t idx : indices_)
    if (idx >= universe_)
      fail(ErrorCode::out_of_range, "IndexSet: index " + std::to_string(idx) +
                                        " outside universe " + std::to_string(universe_));
}

IndexSet IndexSet::all(std::size_t universe) {
  std::vector<std::size_t> idx(universe);
  for (std::size_t i = 0; i < universe; ++i) idx[i] = i;
  return IndexSet(std::move(idx), universe);
}

IndexSet IndexSet::compose(const IndexSet& positions) const {
  if (positions.universe() != size())
    fail(ErrorCode::invalid_argument, "IndexSet::compose: position universe mismatch");
  std::vector<std::size_t> out;
  out.reserve(positions.size());
  for (std::size_t p : positions) out.push_back(indices_[p]);
  return IndexSet(std::move(out), universe_);
}

SvdFactors svd_full(const Matrix& a) {
  require_finite(a, "svd_full");
  return dense_svd(a, std::min(a.rows(), a.cols()));
}

namespace {

SvdFactors truncated_impl(const Matrix& a, Index k, const SvdOptions& options, double* next_value) {
  const Index p = std::min(a.rows(), a.cols());
  if (k < 1 || k > p)
    fail(ErrorCode::out_of_range, "svd_truncated: k=" + std::to_string(k) +
                                      " outside [1, " + std::to_string(p) + "]");
  require_finite(a, "svd_truncated");

  bool dense = options.method == SvdMethod::dense;
  if (options.method == SvdMethod::automatic)
    dense = p <= kDenseCutoff || 4 * (k + kOversampling) > p;
  if (!dense) {
    SvdFactors f;
    if (randomized_svd(a, k, options, f, next_value)) return f;
  }
  return dense_svd(a, k, next_value);
}

}  // namespace

SvdFactors svd_truncated(const Matrix& a, Index k, const SvdOptions& options) {
  return truncated_impl(a, k, options, nullptr);
}

SvdFactors svd_leading(const Matrix& a, Index k, double& next_value, const SvdOptions& options) {
  return truncated_impl(a, k, options, &next_value);
}

SvdFactors svd_truncated(const DenseMatrix& a, std::size_t k, double tol) {
  return svd_truncated(a.values(), to_index(k), SvdOptions{tol, SvdMethod::automatic});
}

Vector singular_values(const Matrix& a) {
  require_finite(a, "singular_values");
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues();
}

Matrix pseudoinverse(const Matrix& a, double rank_tol) {
  if (rank_tol < 0) fail(ErrorCode::invalid_argument, "pseudoinverse: negative rank_tol");
  require_finite(a, "pseudoinverse");
  if (a.size() == 0) return Matrix::Zero(a.cols(), a.rows());
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double cutoff = rank_tol * s(0);
  Vector inv = Vector::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Matrix pseudoinverse_truncated(const Matrix& a, Index r) {
  const SvdFactors f = svd_truncated(a, r, SvdOptions{1e-13, SvdMethod::dense});
  Vector inv = Vector::Zero(r);
  for (Index i = 0; i < r; ++i)
    if (f.values(i) > 0) inv(i) = 1.0 / f.values(i);
  return f.right_t.transpose() * inv.asDiagonal() * f.left.transpose();
}

DenseMatrix pseudoinverse(const DenseMatrix& a, double rank_tol) {
  return DenseMatrix(pseudoinverse(a.values(), rank_tol));
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  // The Ritz value converges quadratically in the vector residual, so a
  // 1e-6 residual already pins sigma_1 far below that.
  return svd_truncated(a, 1, SvdOptions{1e-6, SvdMethod::automatic}).values(0);
}

double norm(const Matrix& a, NormKind kind) {
  switch (kind) {
    case NormKind::spectral:
      return spectral_norm(a);
    case NormKind::frobenius:
      return a.norm();
    case NormKind::max_abs_entry:
      return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
    case NormKind::l0_row_max: {
      Index best = 0;
      for (Index i = 0; i < a.rows(); ++i)
        best = std::max<Index>(best, (a.row(i).array() != 0.0).count());
      return static_cast<double>(best);
    }
    case NormKind::l0_col_max: {
      Index best = 0;
      for (Index j = 0; j < a.cols(); ++j)
        best = std::max<Index>(best, (a.col(j).array() != 0.0).count());
      return static_cast<double>(best);
    }
  }
  return 0.0;
}

double norm(const DenseMatrix& a, NormKind kind) { return norm(a.values(), kind); }

namespace {

std::vector<Index> resolve(const Selection& sel, Index extent, const char* axis) {
  std::vector<Index> out;
  if (std::holds_alternative<AllIndices>(sel)) {
    out.resize(static_cast<std::size_t>(extent));
    for (Index i = 0; i < extent; ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
  }
  const auto& set = std::get<IndexSet>(sel);
  out.reserve(set.size());
  for (std::size_t idx : set) {
    if (to_index(idx) >= extent)
      fail(ErrorCode::out_of_range, std::string("submatrix: ") + axis + " index " +
                                        std::to_string(idx) + " >= " + std::to_string(extent));
    out.push_back(to_index(idx));
  }
  return out;
}

}  // namespace

Matrix submatrix(const Matrix& a, const Selection& rows, const Selection& cols) {
  const auto ri = resolve(rows, a.rows(), "row");
  const auto ci = resolve(cols, a.cols(), "column");
  Matrix out(to_index(ri.size()), to_index(ci.size()));
  for (std::size_t b = 0; b < ci.size(); ++b)
    for (std::size_t r = 0; r < ri.size(); ++r) out(to_index(r), to_index(b)) = a(ri[r], ci[b]);
  return out;
}

DenseMatrix submatrix(const DenseMatrix& a, const Selection& rows, const Selection& cols) {
  return DenseMatrix(submatrix(a.values(), rows, cols));
}

}  // namespace rcur
