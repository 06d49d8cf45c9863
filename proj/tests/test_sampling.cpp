#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "rcur/error.hpp"
#include "rcur/sampling.hpp"

using namespace rcur;

TEST_CASE("full sample without replacement is a permutation") {
  const IndexSet s = sample_uniform(50, 50, SampleMode::without_replacement, 3);
  std::vector<std::size_t> v = s.indices();
  std::sort(v.begin(), v.end());
  std::vector<std::size_t> all(50);
  std::iota(all.begin(), all.end(), std::size_t{0});
  CHECK(v == all);
}

TEST_CASE("sampling is deterministic in the seed") {
  for (auto mode : {SampleMode::with_replacement, SampleMode::without_replacement}) {
    CHECK(sample_uniform(1000, 40, mode, 9) == sample_uniform(1000, 40, mode, 9));
    CHECK_FALSE(sample_uniform(1000, 40, mode, 9) == sample_uniform(1000, 40, mode, 10));
  }
}

TEST_CASE("without replacement never repeats") {
  const IndexSet s = sample_uniform(300, 120, SampleMode::without_replacement, 1);
  std::vector<std::size_t> v = s.indices();
  std::sort(v.begin(), v.end());
  CHECK(std::adjacent_find(v.begin(), v.end()) == v.end());
  CHECK_THROWS_AS(sample_uniform(10, 11, SampleMode::without_replacement, 0), Error);
}

TEST_CASE("with-replacement frequencies stay in the binomial band") {
  const IndexSet s = sample_uniform(10, 10000, SampleMode::with_replacement, 2024);
  std::vector<int> count(10, 0);
  for (auto i : s) ++count[i];
  for (int c : count) {
    CHECK(c >= 900);
    CHECK(c <= 1100);
  }
}

TEST_CASE("sample size rules") {
  CHECK(sample_size(1000, 5, 1.0, 1.06, SizeVariant::log_rn) == 46);
  CHECK(sample_size(81920, 2, 1.0, 25.0, SizeVariant::paper_video) == 566);
  CHECK(sample_size(100, 5, 3.0, 5.0, SizeVariant::log_n) == 100);
  CHECK(sample_size(1000, 2, 2.0, 1.0, SizeVariant::log_n) ==
        static_cast<std::size_t>(std::ceil(4.0 * std::log(1000.0))));
  CHECK_THROWS_AS(sample_size(100, 2, 1.0, 0.0, SizeVariant::log_n), Error);
  CHECK_THROWS_AS(sample_size(100, 2, 0.5, 1.0, SizeVariant::log_n), Error);

  SampleConfig cfg;
  cfg.size = std::size_t{7};
  CHECK(cfg.resolve(100, 2, 1.0) == 7);
  cfg.size = SizeHeuristic{1.06, SizeVariant::log_rn};
  CHECK(cfg.resolve(1000, 5, 1.0) == 46);
}

TEST_CASE("greedy drops the zero column") {
  const DenseMatrix x{{1, 0, 0}, {0, 1, 0}};
  const IndexSet s = greedy_css(x, 2);
  CHECK(s.indices() == std::vector<std::size_t>{0, 1});
  const GreedyResult g = greedy_css_trace(x.values(), 2);
  REQUIRE(g.steps.size() == 1);
  CHECK(g.steps[0].removed == 2);
  CHECK(g.steps[0].criterion == doctest::Approx(0.0));
}

TEST_CASE("greedy with k = m keeps everything") {
  const Matrix x = oracle::row_orthonormal(3, 5, 1);
  const GreedyResult g = greedy_css_trace(x, 5);
  CHECK(g.selected.indices() == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(g.steps.empty());
}

TEST_CASE("greedy argument checks") {
  const Matrix x = oracle::row_orthonormal(3, 6, 2);
  CHECK_THROWS_AS(greedy_css(x, 2), Error);
  CHECK_THROWS_AS(greedy_css(x, 7), Error);
  Matrix low = Matrix::Zero(2, 4);
  low.row(0) << 1, 1, 1, 1;
  CHECK_THROWS_AS(greedy_css(low, 2), Error);
}

TEST_CASE("greedy on 3 x 8 against all 56 three-column subsets") {
  const Matrix x = oracle::row_orthonormal(3, 8, 77);
  const Matrix v = x.transpose();
  const GreedyResult g = greedy_css_trace(x, 3);
  const std::vector<std::size_t> picked = g.selected.indices();
  REQUIRE(picked.size() == 3);

  const double beta_greedy = oracle::beta(v, picked);
  CHECK(beta_greedy <= 3.0);

  int subsets = 0;
  double best = INFINITY;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = a + 1; b < 8; ++b)
      for (std::size_t c = b + 1; c < 8; ++c) {
        ++subsets;
        best = std::min(best, oracle::beta(v, {a, b, c}));
      }
  CHECK(subsets == 56);
  CHECK(best <= beta_greedy);

  // Replay the removals and recompute every criterion by brute force.
  std::vector<std::size_t> s(8);
  std::iota(s.begin(), s.end(), std::size_t{0});
  for (const GreedyStep& step : g.steps) {
    long double lowest = INFINITY;
    std::size_t arg = 0;
    for (auto k : s) {
      const long double c = oracle::removal_cost(x, s, k);
      if (c < lowest) {
        lowest = c;
        arg = k;
      }
    }
    CHECK(step.removed == arg);
    CHECK(std::abs(step.criterion - static_cast<double>(lowest)) <=
          1e-9 * std::max(1.0, std::abs(static_cast<double>(lowest))));
    s.erase(std::find(s.begin(), s.end(), step.removed));
  }
  CHECK(s == picked);
}
