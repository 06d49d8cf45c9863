#include "rcur/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "rcur/error.hpp"

namespace rcur {

namespace {

using Index = Eigen::Index;

constexpr double kSvdTol = 1e-12;
constexpr double kRankTol = 1e-10;

SvdFactors rank_r_svd(const Matrix& a, std::size_t r, const char* who) {
  const Index p = std::min(a.rows(), a.cols());
  if (r < 1 || static_cast<Index>(r) > p)
    fail(ErrorCode::out_of_range, std::string(who) + ": rank " + std::to_string(r) +
                                      " outside [1, " + std::to_string(p) + "]");
  SvdFactors f = svd_truncated(a, static_cast<Index>(r), SvdOptions{kSvdTol});
  if (!(f.sigma_min() > kRankTol * f.sigma_max()))
    fail(ErrorCode::rank_deficient,
         std::string(who) + ": numerical rank below " + std::to_string(r));
  return f;
}

bool within(double lhs, double rhs) { return lhs <= rhs * (1.0 + kBoundSlack); }

}  // namespace

Incoherence2 incoherence(const SvdFactors& f) {
  const double r = static_cast<double>(f.rank());
  Incoherence2 mu;
  mu.mu1 = static_cast<double>(f.left.rows()) / r * f.left.rowwise().squaredNorm().maxCoeff();
  mu.mu2 = static_cast<double>(f.right_t.cols()) / r * f.right_t.colwise().squaredNorm().maxCoeff();
  return mu;
}

Incoherence2 incoherence(const Matrix& a, std::size_t r) {
  return incoherence(rank_r_svd(a, r, "incoherence"));
}

Incoherence2 incoherence(const DenseMatrix& a, std::size_t r) { return incoherence(a.values(), r); }

SparsityLevel sparsity_level(const Matrix& s, double tol) {
  SparsityLevel out;
  if (s.size() == 0) return out;
  const auto nz = (s.array().abs() > tol).cast<double>();
  out.alpha_row = nz.rowwise().sum().maxCoeff() / static_cast<double>(s.cols());
  out.alpha_col = nz.colwise().sum().maxCoeff() / static_cast<double>(s.rows());
  return out;
}

SparsityLevel sparsity_level(const DenseMatrix& s, double tol) { return sparsity_level(s.values(), tol); }

BetaFactor beta_factor(const Matrix& factor, const IndexSet& indices) {
  if (indices.universe() != static_cast<std::size_t>(factor.rows()))
    fail(ErrorCode::invalid_argument, "beta_factor: index universe must match factor rows");
  const Index r = factor.cols();
  BetaFactor out;
  if (static_cast<Index>(indices.size()) < r || r == 0) {
    out.value = std::numeric_limits<double>::infinity();
    out.rank_deficient = true;
    return out;
  }
  const Vector s = singular_values(submatrix(factor, indices, kAll));
  if (!(s(r - 1) > kDefaultRankTol * s(0))) {
    out.value = std::numeric_limits<double>::infinity();
    out.rank_deficient = true;
    return out;
  }
  out.value = std::sqrt(static_cast<double>(indices.size()) / static_cast<double>(factor.rows())) /
              s(r - 1);
  return out;
}

double relative_error(const Matrix& l, const Matrix& l_hat) {
  if (l.rows() != l_hat.rows() || l.cols() != l_hat.cols())
    fail(ErrorCode::invalid_argument, "relative_error: shape mismatch");
  const double denom = spectral_norm(l);
  if (denom == 0.0) fail(ErrorCode::invalid_argument, "relative_error: L is zero");
  return spectral_norm(l - l_hat) / denom;
}

double relative_error(const DenseMatrix& l, const DenseMatrix& l_hat) {
  return relative_error(l.values(), l_hat.values());
}

std::vector<BoundCheck> verify_bounds(const Matrix& l, const Matrix& c, const IndexSet& cols,
                                      std::size_t r) {
  if (c.rows() != l.rows() || static_cast<std::size_t>(c.cols()) != cols.size() ||
      cols.universe() != static_cast<std::size_t>(l.cols()))
    fail(ErrorCode::invalid_argument, "verify_bounds: C must be m x |J| with J indexing L");
  const SvdFactors fl = rank_r_svd(l, r, "verify_bounds(L)");
  const SvdFactors fc = rank_r_svd(c, r, "verify_bounds(C)");
  if (static_cast<Index>(r) < std::min(c.rows(), c.cols())) {
    const double next = svd_truncated(c, static_cast<Index>(r) + 1, SvdOptions{kSvdTol}).values(
        static_cast<Index>(r));
    if (next > 1e-8 * fc.sigma_max())
      fail(ErrorCode::rank_deficient, "verify_bounds: rank(C) exceeds r");
  }

  const Incoherence2 mu_l = incoherence(fl);
  const Incoherence2 mu_c = incoherence(fc);
  const double kappa_l = fl.sigma_max() / fl.sigma_min();
  const double kappa_c = fc.sigma_max() / fc.sigma_min();
  const double rr = static_cast<double>(r);
  const double frac = static_cast<double>(cols.size()) / static_cast<double>(l.cols());

  const Matrix v = fl.right_t.transpose();
  const BetaFactor beta = beta_factor(v, cols);
  const double v_pinv = beta.rank_deficient ? beta.value : beta.value / std::sqrt(frac);

  std::vector<BoundCheck> out;
  auto add = [&out](const char* name, double lhs, double rhs) {
    out.push_back({name, lhs, rhs, within(lhs, rhs)});
  };
  add("mu1_inheritance", mu_c.mu1, mu_l.mu1);
  add("mu2_inflation", mu_c.mu2, beta.value * beta.value * kappa_l * kappa_l * mu_l.mu2);
  add("kappa_inflation", kappa_c, beta.value * std::sqrt(mu_l.mu2 * rr) * kappa_l);
  add("spectral_norm", fc.sigma_max(), std::sqrt(mu_l.mu2 * rr * frac) * fl.sigma_max());
  add("pinv_ratio", fl.sigma_min() / fc.sigma_min(), v_pinv);
  return out;
}

DiagnosticsReport diagnose(const DiagnoseInput& in) {
  if (in.low_rank == nullptr) fail(ErrorCode::invalid_argument, "diagnose: low_rank is required");
  const Matrix& l = *in.low_rank;
  const SvdFactors f = rank_r_svd(l, in.r, "diagnose");
  DiagnosticsReport rep;
  const Incoherence2 mu = incoherence(f);
  rep.mu1 = mu.mu1;
  rep.mu2 = mu.mu2;
  rep.kappa = f.sigma_max() / f.sigma_min();

  const Index p = std::min(l.rows(), l.cols());
  const Index probe = std::min<Index>(static_cast<Index>(in.r) + 1, p);
  const Vector top = probe > static_cast<Index>(in.r)
                         ? svd_truncated(l, probe, SvdOptions{kSvdTol}).values
                         : f.values;
  rep.rank_numeric = static_cast<std::size_t>((top.array() > kRankTol * top(0)).count());

  if (in.sparse != nullptr) {
    const SparsityLevel exact = sparsity_level(*in.sparse);
    const SparsityLevel loose = sparsity_level(*in.sparse, 1e-12);
    rep.alpha_row = exact.alpha_row;
    rep.alpha_col = exact.alpha_col;
    rep.alpha = exact.alpha();
    rep.alpha_row_tol = loose.alpha_row;
    rep.alpha_col_tol = loose.alpha_col;
    rep.alpha_tol = loose.alpha();
  }
  if (in.estimate != nullptr) rep.rel_spectral_error = relative_error(l, *in.estimate);
  if (in.cols != nullptr) rep.beta = beta_factor(Matrix(f.right_t.transpose()), *in.cols).value;
  if (in.rows != nullptr) rep.beta_prime = beta_factor(f.left, *in.rows).value;
  return rep;
}

std::string to_json(const DiagnosticsReport& rep) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    if (!v) return nullptr;
    if (!std::isfinite(*v)) return "inf";
    return *v;
  };
  nlohmann::json j{
      {"mu1", rep.mu1},
      {"mu2", rep.mu2},
      {"alpha_row", rep.alpha_row},
      {"alpha_col", rep.alpha_col},
      {"alpha", rep.alpha},
      {"alpha_row_tol", rep.alpha_row_tol},
      {"alpha_col_tol", rep.alpha_col_tol},
      {"alpha_tol", rep.alpha_tol},
      {"kappa", rep.kappa},
      {"rank_numeric", rep.rank_numeric},
      {"rel_spectral_error", opt(rep.rel_spectral_error)},
      {"beta", opt(rep.beta)},
      {"beta_prime", opt(rep.beta_prime)},
  };
  return j.dump();
}

}  // namespace rcur
