#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rcur/error.hpp"
#include "rcur/rpca.hpp"
#include "rcur/synth.hpp"

using namespace rcur;

TEST_CASE("hard threshold uses a strict comparison") {
  const DenseMatrix a{{3, 0.5}, {-2, 1}};
  CHECK(hard_threshold(a, 1.0) == DenseMatrix{{3, 0}, {-2, 0}});
  CHECK(hard_threshold(a, 0.0) == a);
  CHECK(hard_threshold(a, 3.0) == DenseMatrix{{0, 0}, {0, 0}});
  const DenseMatrix z{{0, 1}, {0, -1}};
  CHECK(hard_threshold(z, 0.0) == z);
  CHECK_THROWS_AS(hard_threshold(a, -1.0), Error);
}

TEST_CASE("config validation") {
  RpcaConfig c;
  CHECK_NOTHROW(c.validate());
  c.threshold_decay = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = RpcaConfig{};
  c.tol = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = RpcaConfig{};
  c.threshold_scale = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = RpcaConfig{};
  c.target_rank = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("initialization keeps an exactly low-rank input") {
  const Matrix l = gen_lowrank(60, 50, 3, 4.0, 1);
  const InitResult init = init_altproj(l, 3, 10.0);  // threshold above every entry
  CHECK(oracle::count_nonzero(init.sparse) == 0);
  CHECK((init.low_rank - l).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("automatic initialization leaves an incoherent L untouched") {
  const Matrix l = gen_lowrank(200, 200, 3, 5.0, 2);
  const InitResult init = init_altproj(l, 3);
  CHECK(init.threshold > l.cwiseAbs().maxCoeff());
  CHECK(oracle::count_nonzero(init.sparse) == 0);
}

TEST_CASE("initialization bound on a synthetic instance") {
  const GroundTruth gt = generate(SynthConfig{200, 200, 3, 5.0, 0.02, 10.0, 3});
  const InitResult init = init_altproj(gt.observed, 3);
  const auto mu = oracle::incoherence(gt.low_rank, 3);
  const double alpha = 0.02;
  const double bound =
      8 * alpha * std::max(mu.mu1, mu.mu2) * 3 * oracle::spectral_norm(gt.low_rank);
  CHECK(oracle::spectral_norm(gt.low_rank - init.low_rank) <= bound);
  for (Eigen::Index i = 0; i < init.sparse.size(); ++i)
    if (init.sparse.data()[i] != 0.0) CHECK(gt.sparse.data()[i] != 0.0);
}

TEST_CASE("noiseless input is a fixed point") {
  const Matrix l = gen_lowrank(80, 70, 4, 3.0, 4);
  RpcaConfig c;
  c.target_rank = 4;
  const RpcaResult res = altproj(l, c);
  CHECK(res.converged);
  CHECK(oracle::spectral_norm(l - res.low_rank) / oracle::spectral_norm(l) <= c.tol);
  CHECK(res.sparse.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("recovers a single corrupted entry of the all-ones matrix") {
  Matrix d = Matrix::Ones(10, 10);
  d(2, 7) += 5.0;
  RpcaConfig c;
  c.target_rank = 1;
  const RpcaResult res = altproj(d, c);
  Matrix s = Matrix::Zero(10, 10);
  s(2, 7) = 5.0;
  CHECK((res.low_rank - Matrix::Ones(10, 10)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((res.sparse - s).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("synthetic recovery and result invariants") {
  const GroundTruth gt = generate(SynthConfig{200, 200, 3, 5.0, 0.02, 10.0, 5});
  RpcaConfig c;
  c.target_rank = 3;
  const RpcaResult res = altproj(gt.observed, c);
  CHECK(res.iterations <= 100);
  CHECK(oracle::spectral_norm(gt.low_rank - res.low_rank) / oracle::spectral_norm(gt.low_rank) <=
        1e-6);
  const auto s = oracle::singular_values(res.low_rank);
  CHECK(s[3] <= 1e-10 * s[0]);
  CHECK(std::abs(res.residual_norm - (gt.observed - res.low_rank - res.sparse).norm()) <=
        1e-12 * gt.observed.norm());
  CHECK(res.trace_monotone);
  CHECK(res.residual_trace.size() == res.iterations);
  CHECK(res.mu_used >= 1.0);
}

TEST_CASE("single-shot schedule also converges") {
  const GroundTruth gt = generate(SynthConfig{150, 120, 2, 2.0, 0.02, 10.0, 6});
  RpcaConfig c;
  c.target_rank = 2;
  c.stagewise = false;
  const RpcaResult res = altproj(gt.observed, c);
  CHECK(res.converged);
  CHECK(oracle::spectral_norm(gt.low_rank - res.low_rank) / oracle::spectral_norm(gt.low_rank) <=
        1e-6);
}

TEST_CASE("iteration cap is honoured") {
  const GroundTruth gt = generate(SynthConfig{100, 100, 3, 5.0, 0.02, 10.0, 7});
  RpcaConfig c;
  c.target_rank = 3;
  c.max_iters = 2;
  const RpcaResult res = altproj(gt.observed, c);
  CHECK(res.iterations == 2);
  CHECK_FALSE(res.converged);
}

TEST_CASE("rank outside the valid range") {
  RpcaConfig c;
  c.target_rank = 6;
  CHECK_THROWS_AS(altproj(Matrix::Ones(5, 5), c), Error);
}
