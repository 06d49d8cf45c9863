#pragma once

// Reference computations for the tests. Nothing here calls into the library;
// each quantity goes through a different algorithm than the one under test
// (Jacobi SVD in long double, eigenvalues of Gram matrices, QR leverage).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

inline std::vector<double> singular_values(const Matrix& a) {
  Eigen::JacobiSVD<MatrixL> svd(a.cast<long double>());
  std::vector<double> s;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    s.push_back(static_cast<double>(svd.singularValues()(i)));
  return s;
}

/// Largest singular value from the top eigenvalue of the smaller Gram matrix.
inline double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Matrix g = a.rows() >= a.cols() ? Matrix(a.transpose() * a) : Matrix(a * a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// ||A^+||_2 = 1 / sigma_r for the rank-r truncation of A.
inline double pinv_norm(const Matrix& a, std::size_t r) {
  const auto s = singular_values(a);
  return 1.0 / s.at(r - 1);
}

/// Moore-Penrose pseudoinverse from a long double Jacobi SVD.
inline Matrix pinv(const Matrix& a, std::size_t r) {
  Eigen::JacobiSVD<MatrixL> svd(a.cast<long double>(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto k = static_cast<Eigen::Index>(r);
  VectorL inv = svd.singularValues().head(k).cwiseInverse();
  MatrixL p = svd.matrixV().leftCols(k) * inv.asDiagonal() * svd.matrixU().leftCols(k).transpose();
  return p.cast<double>();
}

/// Orthonormal basis of the leading r-dimensional column space by pivoted QR.
inline Matrix range_basis(const Matrix& a, std::size_t r) {
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), static_cast<Eigen::Index>(r));
  return q;
}

/// Incoherence of an exactly rank-r matrix from leverage scores of its row
/// and column spaces (QR based, no SVD).
struct Mu {
  double mu1;
  double mu2;
};

inline Mu incoherence(const Matrix& a, std::size_t r) {
  const Matrix w = range_basis(a, r);
  const Matrix v = range_basis(a.transpose(), r);
  const double rr = static_cast<double>(r);
  return {static_cast<double>(a.rows()) / rr * w.rowwise().squaredNorm().maxCoeff(),
          static_cast<double>(a.cols()) / rr * v.rowwise().squaredNorm().maxCoeff()};
}

/// Right singular vectors (n x r) of the rank-r part, long double Jacobi.
inline Matrix right_vectors(const Matrix& a, std::size_t r) {
  Eigen::JacobiSVD<MatrixL> svd(a.cast<long double>(), Eigen::ComputeThinV);
  return svd.matrixV().leftCols(static_cast<Eigen::Index>(r)).cast<double>();
}

inline Matrix left_vectors(const Matrix& a, std::size_t r) {
  Eigen::JacobiSVD<MatrixL> svd(a.cast<long double>(), Eigen::ComputeThinU);
  return svd.matrixU().leftCols(static_cast<Eigen::Index>(r)).cast<double>();
}

inline Matrix rows_of(const Matrix& a, const std::vector<std::size_t>& idx) {
  Matrix out(static_cast<Eigen::Index>(idx.size()), a.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = a.row(static_cast<Eigen::Index>(idx[i]));
  return out;
}

inline Matrix cols_of(const Matrix& a, const std::vector<std::size_t>& idx) {
  Matrix out(a.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(idx[j]));
  return out;
}

/// sqrt(|J| / N) ||F(J, :)^+||_2 with the smallest singular value from the
/// eigenvalues of the r x r Gram matrix.
inline double beta(const Matrix& factor, const std::vector<std::size_t>& idx) {
  const Matrix sub = rows_of(factor, idx);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sub.transpose() * sub, Eigen::EigenvaluesOnly);
  const double smin = std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
  return std::sqrt(static_cast<double>(idx.size()) / static_cast<double>(factor.rows())) / smin;
}

/// tr((X_S X_S^T)^{-1}) in long double; +inf when singular.
inline long double trace_inverse(const Matrix& x, const std::vector<std::size_t>& cols) {
  const MatrixL xs = cols_of(x, cols).cast<long double>();
  const MatrixL g = xs * xs.transpose();
  Eigen::FullPivLU<MatrixL> lu(g);
  if (!lu.isInvertible()) return INFINITY;
  return lu.inverse().trace();
}

/// Brute-force removal criterion: growth of tr((X_S X_S^T)^{-1}) when k leaves S.
inline long double removal_cost(const Matrix& x, const std::vector<std::size_t>& s, std::size_t k) {
  std::vector<std::size_t> rest;
  for (auto j : s)
    if (j != k) rest.push_back(j);
  return trace_inverse(x, rest) - trace_inverse(x, s);
}

/// Random r x m matrix with orthonormal rows.
inline Matrix row_orthonormal(std::size_t r, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(r));
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = g(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
  return q.transpose();
}

/// Rank-r matrix with Gaussian factors (independent of the library generator).
inline Matrix gaussian_lowrank(std::size_t m, std::size_t n, std::size_t r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix a(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(r));
  Matrix b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
  for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = g(rng);
  return a * b;
}

inline std::size_t count_nonzero(const Matrix& a) {
  std::size_t c = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) c += a.data()[i] != 0.0;
  return c;
}

}  // namespace oracle
