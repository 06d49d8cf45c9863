#include <doctest.h>

#include <json.hpp>

#include <cmath>

#include "oracles.hpp"
#include "rcur/diagnostics.hpp"
#include "rcur/error.hpp"
#include "rcur/sampling.hpp"
#include "rcur/synth.hpp"

using namespace rcur;

TEST_CASE("incoherence extremes") {
  const Incoherence2 flat = incoherence(Matrix::Ones(8, 6), 1);
  CHECK(flat.mu1 == doctest::Approx(1.0));
  CHECK(flat.mu2 == doctest::Approx(1.0));
  Matrix spike = Matrix::Zero(8, 6);
  spike(0, 0) = 1;
  const Incoherence2 s = incoherence(spike, 1);
  CHECK(s.mu1 == doctest::Approx(8.0));
  CHECK(s.mu2 == doctest::Approx(6.0));
}

TEST_CASE("incoherence matches the QR leverage oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Matrix l = gen_lowrank(120, 90, 4, 6.0, seed);
    const Incoherence2 mu = incoherence(l, 4);
    const oracle::Mu ref = oracle::incoherence(l, 4);
    CHECK(std::abs(mu.mu1 - ref.mu1) <= 1e-9);
    CHECK(std::abs(mu.mu2 - ref.mu2) <= 1e-9);
    CHECK(mu.mu1 >= 1.0);
    CHECK(mu.mu1 <= 120.0 / 4);
  }
}

TEST_CASE("incoherence needs rank r") {
  CHECK_THROWS_AS(incoherence(Matrix::Ones(5, 5), 2), Error);
}

TEST_CASE("sparsity levels") {
  const SparsityLevel zero = sparsity_level(Matrix::Zero(4, 5));
  CHECK(zero.alpha_row == 0);
  CHECK(zero.alpha_col == 0);
  const SparsityLevel full = sparsity_level(Matrix::Ones(4, 5));
  CHECK(full.alpha_row == 1);
  CHECK(full.alpha_col == 1);
  Matrix s = Matrix::Zero(4, 8);
  for (int i = 0; i < 4; ++i) {
    s(i, 2 * i) = 1;
    s(i, 2 * i + 1) = -3;
  }
  const SparsityLevel lv = sparsity_level(s);
  CHECK(lv.alpha_row == doctest::Approx(0.25));
  CHECK(lv.alpha_col == doctest::Approx(0.25));
  Matrix tiny = Matrix::Zero(2, 2);
  tiny(0, 0) = 1e-14;
  CHECK(sparsity_level(tiny).alpha() > 0);
  CHECK(sparsity_level(tiny, 1e-12).alpha() == 0);
}

TEST_CASE("beta factor") {
  const Matrix v = oracle::row_orthonormal(3, 40, 1).transpose();
  const BetaFactor full = beta_factor(v, IndexSet::all(40));
  CHECK(full.value == doctest::Approx(1.0));
  CHECK_FALSE(full.rank_deficient);

  Matrix dup = v;
  dup.row(1) = dup.row(0);
  const BetaFactor bad = beta_factor(dup, IndexSet({0, 1, 1}, 40));
  CHECK(bad.rank_deficient);
  CHECK(std::isinf(bad.value));

  const IndexSet j = sample_uniform(40, 10, SampleMode::without_replacement, 2);
  CHECK(beta_factor(v, j).value == doctest::Approx(oracle::beta(v, j.indices())).epsilon(1e-10));
}

TEST_CASE("beta at the 1.06 mu r ln(rn) sample size") {
  int good = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Matrix v = oracle::row_orthonormal(5, 1000, 1000 + t).transpose();
    const IndexSet j = sample_uniform(1000, 46, SampleMode::without_replacement, t);
    good += beta_factor(v, j).value <= 10.0;
  }
  CHECK(good >= 198);
}

TEST_CASE("relative error") {
  const Matrix l = gen_lowrank(20, 15, 2, 2.0, 3);
  CHECK(relative_error(l, l) == 0.0);
  CHECK(relative_error(l, Matrix::Zero(20, 15)) == doctest::Approx(1.0));
  CHECK(relative_error(l, 2 * l) == doctest::Approx(1.0));
  CHECK_THROWS_AS(relative_error(Matrix::Zero(3, 3), Matrix::Zero(3, 3)), Error);
}

TEST_CASE("bounds for the full column set") {
  const Matrix l = gen_lowrank(60, 50, 3, 4.0, 4);
  const auto checks = verify_bounds(l, l, IndexSet::all(50), 3);
  REQUIRE(checks.size() == 5);
  for (const auto& b : checks) CHECK_MESSAGE(b.holds, b.name);
}

TEST_CASE("bounds with a nearly singular selection") {
  const Matrix l = gen_lowrank(80, 60, 3, 3.0, 5);
  const Matrix v = oracle::right_vectors(l, 3);
  // Columns whose right-singular rows are closest to the first one.
  std::vector<std::pair<double, std::size_t>> dist;
  for (Eigen::Index j = 0; j < 60; ++j)
    dist.push_back({(v.row(j) - v.row(0)).norm() / v.row(0).norm(), static_cast<std::size_t>(j)});
  std::sort(dist.begin(), dist.end());
  std::vector<std::size_t> idx;
  for (int k = 0; k < 4; ++k) idx.push_back(dist[static_cast<std::size_t>(k)].second);
  std::sort(idx.begin(), idx.end());
  const IndexSet j(idx, 60);
  const auto checks = verify_bounds(l, submatrix(l, kAll, j), j, 3);
  for (const auto& b : checks) CHECK_MESSAGE(b.holds, b.name);
  const double beta = oracle::beta(v, idx);
  CHECK(beta > 3.0);
}

TEST_CASE("bounds reject mismatched shapes") {
  const Matrix l = gen_lowrank(20, 20, 2, 2.0, 6);
  CHECK_THROWS_AS(verify_bounds(l, l, IndexSet::all(19), 2), Error);
}

TEST_CASE("diagnose report and serialization") {
  const GroundTruth gt = generate(SynthConfig{100, 80, 3, 4.0, 0.05, 10.0, 7});
  const IndexSet j = sample_uniform(80, 20, SampleMode::without_replacement, 1);
  DiagnoseInput in;
  in.low_rank = &gt.low_rank;
  in.r = 3;
  in.sparse = &gt.sparse;
  const Matrix est = gt.low_rank * 1.001;
  in.estimate = &est;
  in.cols = &j;
  const DiagnosticsReport rep = diagnose(in);
  CHECK(rep.kappa == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(rep.rank_numeric == 3);
  CHECK(rep.alpha <= 0.05);
  CHECK(rep.alpha > 0.0);
  REQUIRE(rep.rel_spectral_error.has_value());
  CHECK(*rep.rel_spectral_error == doctest::Approx(0.001).epsilon(1e-6));
  CHECK(rep.beta.has_value());
  CHECK_FALSE(rep.beta_prime.has_value());

  const auto j2 = nlohmann::json::parse(to_json(rep));
  for (const char* key : {"mu1", "mu2", "alpha_row", "alpha_col", "alpha", "kappa", "rank_numeric",
                          "rel_spectral_error", "beta", "beta_prime"})
    CHECK_MESSAGE(j2.contains(key), key);
  CHECK(j2["beta_prime"].is_null());
}
