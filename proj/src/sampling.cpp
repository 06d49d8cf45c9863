#include "rcur/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "rcur/error.hpp"
#include "rcur/random.hpp"

namespace rcur {

namespace {

using Index = Eigen::Index;

// Columns whose removal would leave 1 - |y|^2 below this are treated as
// essential (removing them drops the rank).
constexpr double kLeverageSlack = 1e-10;

}  // namespace

void SampleConfig::validate() const {
  if (const auto* h = std::get_if<SizeHeuristic>(&size); h && !(h->c > 0))
    fail(ErrorCode::invalid_argument, "SampleConfig: heuristic constant must be > 0");
}

std::size_t SampleConfig::resolve(std::size_t universe, std::size_t r, double mu) const {
  validate();
  if (const auto* count = std::get_if<std::size_t>(&size)) return *count;
  const auto& h = std::get<SizeHeuristic>(size);
  return sample_size(universe, r, mu, h.c, h.variant);
}

IndexSet sample_uniform(std::size_t universe, std::size_t count, SampleMode mode,
                        std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::size_t> out;
  out.reserve(count);
  if (mode == SampleMode::with_replacement) {
    if (count > 0 && universe == 0)
      fail(ErrorCode::invalid_argument, "sample_uniform: empty universe");
    std::uniform_int_distribution<std::size_t> pick(0, universe == 0 ? 0 : universe - 1);
    for (std::size_t i = 0; i < count; ++i) out.push_back(pick(rng));
    return IndexSet(std::move(out), universe);
  }
  if (count > universe)
    fail(ErrorCode::invalid_argument, "sample_uniform: cannot draw " + std::to_string(count) +
                                          " distinct indices from " + std::to_string(universe));
  // Partial Fisher-Yates: the first count slots end up a uniform sample.
  std::vector<std::size_t> pool(universe);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, universe - 1);
    std::swap(pool[i], pool[pick(rng)]);
    out.push_back(pool[i]);
  }
  return IndexSet(std::move(out), universe);
}

std::size_t sample_size(std::size_t universe, std::size_t r, double mu, double c,
                        SizeVariant variant) {
  if (!(c > 0)) fail(ErrorCode::invalid_argument, "sample_size: c must be > 0");
  if (r < 1) fail(ErrorCode::invalid_argument, "sample_size: r must be >= 1");
  if (!(mu >= 1)) fail(ErrorCode::invalid_argument, "sample_size: mu must be >= 1");
  const double rr = static_cast<double>(r);
  const double u = static_cast<double>(universe);
  double value = 0.0;
  switch (variant) {
    case SizeVariant::log_n:
      value = c * mu * rr * std::log(u);
      break;
    case SizeVariant::log_rn:
      value = c * mu * rr * std::log(rr * u);
      break;
    case SizeVariant::paper_video:
      value = c * rr * std::log(u);
      break;
  }
  if (!(value < u)) return universe;
  return static_cast<std::size_t>(std::ceil(std::max(value, 0.0)));
}

GreedyResult greedy_css_trace(const Matrix& x, std::size_t k) {
  require_finite(x, "greedy_css");
  const Index r = x.rows();
  const Index m = x.cols();
  if (r < 1 || r > m)
    fail(ErrorCode::invalid_argument, "greedy_css: input must be r x m with 1 <= r <= m");
  if (static_cast<Index>(k) < r)
    fail(ErrorCode::invalid_argument, "greedy_css: k=" + std::to_string(k) + " < r=" +
                                          std::to_string(r));
  if (static_cast<Index>(k) > m)
    fail(ErrorCode::out_of_range, "greedy_css: k=" + std::to_string(k) + " exceeds m=" +
                                      std::to_string(m));
  {
    const Vector s = singular_values(x);
    if (!(s(r - 1) > 1e-10 * s(0)))
      fail(ErrorCode::rank_deficient, "greedy_css: input has numerical rank below r");
  }

  std::vector<std::size_t> alive(static_cast<std::size_t>(m));
  std::iota(alive.begin(), alive.end(), std::size_t{0});
  GreedyResult result;

  while (alive.size() > k) {
    Matrix xs(r, static_cast<Index>(alive.size()));
    for (std::size_t p = 0; p < alive.size(); ++p)
      xs.col(static_cast<Index>(p)) = x.col(static_cast<Index>(alive[p]));
    Eigen::BDCSVD<Matrix> svd(xs, Eigen::ComputeThinV);
    const Vector& sigma = svd.singularValues();
    const Matrix& y = svd.matrixV();

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_pos = alive.size();
    for (std::size_t p = 0; p < alive.size(); ++p) {
      const auto row = y.row(static_cast<Index>(p));
      const double slack = 1.0 - row.squaredNorm();
      if (!(slack > kLeverageSlack)) continue;
      const double criterion = (row.transpose().cwiseQuotient(sigma)).squaredNorm() / slack;
      if (criterion < best) {
        best = criterion;
        best_pos = p;
      }
    }
    if (best_pos == alive.size())
      fail(ErrorCode::degenerate, "greedy_css: every remaining column is essential");
    result.steps.push_back({alive[best_pos], best});
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(best_pos));
  }

  result.selected = IndexSet(std::move(alive), static_cast<std::size_t>(m));
  return result;
}

IndexSet greedy_css(const Matrix& x, std::size_t k) { return greedy_css_trace(x, k).selected; }

IndexSet greedy_css(const DenseMatrix& x, std::size_t k) { return greedy_css(x.values(), k); }

}  // namespace rcur
