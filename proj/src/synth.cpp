#include "rcur/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "rcur/error.hpp"
#include "rcur/random.hpp"

namespace rcur {

namespace {

using Index = Eigen::Index;

Matrix gaussian(Index rows, Index cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::normal_distribution<double> gauss;
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = gauss(rng);
  return g;
}

Matrix orthonormal_columns(const Matrix& g) {
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
}

std::vector<std::size_t> permutation(std::size_t n, SplitMix64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

void SynthConfig::validate() const {
  if (r < 1 || r > std::min(m, n))
    fail(ErrorCode::invalid_argument, "SynthConfig: r must lie in [1, min(m, n)]");
  if (!(kappa >= 1)) fail(ErrorCode::invalid_argument, "SynthConfig: kappa must be >= 1");
  if (!(alpha >= 0 && alpha <= 1))
    fail(ErrorCode::invalid_argument, "SynthConfig: alpha must lie in [0, 1]");
  if (!(outlier_magnitude >= 0))
    fail(ErrorCode::invalid_argument, "SynthConfig: outlier_magnitude must be >= 0");
}

Matrix gen_lowrank(std::size_t m, std::size_t n, std::size_t r, double kappa, std::uint64_t seed) {
  SynthConfig{m, n, r, kappa, 0.0, 0.0, seed}.validate();
  const Index rk = static_cast<Index>(r);
  const Matrix w = orthonormal_columns(gaussian(static_cast<Index>(m), rk, derive_seed(seed, 1)));
  const Matrix v = orthonormal_columns(gaussian(static_cast<Index>(n), rk, derive_seed(seed, 2)));
  Vector sigma(rk);
  for (Index i = 0; i < rk; ++i)
    sigma(i) = rk == 1 ? 1.0 : std::pow(kappa, -static_cast<double>(i) / static_cast<double>(rk - 1));
  return w * sigma.asDiagonal() * v.transpose();
}

Matrix gen_sparse(std::size_t m, std::size_t n, double alpha, double magnitude,
                  std::uint64_t seed, double reference_scale) {
  if (!(alpha >= 0 && alpha <= 1))
    fail(ErrorCode::invalid_argument, "gen_sparse: alpha must lie in [0, 1]");
  Matrix s = Matrix::Zero(static_cast<Index>(m), static_cast<Index>(n));
  if (alpha == 0.0 || m == 0 || n == 0) return s;

  const auto row_cap = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(n)));
  const auto col_cap = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(m)));
  const std::size_t total = std::min(m * row_cap, n * col_cap);
  if (total == 0)
    fail(ErrorCode::invalid_argument,
         "gen_sparse: alpha=" + std::to_string(alpha) + " admits no nonzero in a " +
             std::to_string(m) + "x" + std::to_string(n) + " matrix");

  SplitMix64 rng(seed);
  const auto row_order = permutation(m, rng);
  const auto col_order = permutation(n, rng);
  std::uniform_real_distribution<double> mag(0.5, 1.5);
  std::bernoulli_distribution negative(0.5);

  // Rows take consecutive runs along a cyclic column order: each row gets
  // floor or ceil of total/m distinct columns, each column floor or ceil of total/n.
  const std::size_t base = total / m;
  const std::size_t extra = total % m;
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t count = base + (k < extra ? 1 : 0);
    const auto i = static_cast<Index>(row_order[k]);
    for (std::size_t t = 0; t < count; ++t) {
      const auto j = static_cast<Index>(col_order[cursor]);
      cursor = (cursor + 1) % n;
      const double value = mag(rng) * magnitude * reference_scale;
      s(i, j) = negative(rng) ? -value : value;
    }
  }
  return s;
}

GroundTruth generate(const SynthConfig& config) {
  config.validate();
  GroundTruth gt;
  gt.low_rank = gen_lowrank(config.m, config.n, config.r, config.kappa, derive_seed(config.seed, 10));
  const double reference = gt.low_rank.cwiseAbs().mean();
  gt.sparse = gen_sparse(config.m, config.n, config.alpha, config.outlier_magnitude,
                         derive_seed(config.seed, 11), reference);
  gt.observed = gt.low_rank + gt.sparse;
  return gt;
}

void VideoConfig::validate() const {
  if (frames < r || height == 0 || width == 0 || r < 1)
    fail(ErrorCode::invalid_argument, "VideoConfig: need r >= 1 and frames >= r");
  if (blob_size == 0 || blob_size > std::min(height, width))
    fail(ErrorCode::invalid_argument, "VideoConfig: blob must fit inside a frame");
  const double footprint = static_cast<double>(blob_size * blob_size);
  if (footprint > alpha * static_cast<double>(height * width))
    fail(ErrorCode::invalid_argument,
         "VideoConfig: blob footprint " + std::to_string(blob_size * blob_size) +
             " exceeds alpha * height * width");
}

GroundTruth gen_video(const VideoConfig& config) {
  config.validate();
  const auto h = static_cast<Index>(config.height);
  const auto w = static_cast<Index>(config.width);
  const Index pixels = h * w;
  const auto frames = static_cast<Index>(config.frames);
  const auto r = static_cast<Index>(config.r);
  SplitMix64 rng(derive_seed(config.seed, 20));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  // Basis 0 is the base scene in [30, 110]; the others are illumination
  // patterns in [0, 50] that switch on in their own state.
  Matrix basis(pixels, r);
  for (Index k = 0; k < r; ++k) {
    const double fx = 1.0 + static_cast<double>(k), fy = 0.5 + 0.5 * static_cast<double>(k);
    const double px = phase(rng), py = phase(rng);
    for (Index y = 0; y < h; ++y)
      for (Index x = 0; x < w; ++x) {
        const double u = static_cast<double>(x) / static_cast<double>(w);
        const double v = static_cast<double>(y) / static_cast<double>(h);
        const double wave = 0.5 + 0.5 * std::sin(2 * std::numbers::pi * fx * u + px) *
                                      std::cos(2 * std::numbers::pi * fy * v + py);
        basis(y * w + x, k) = k == 0 ? std::round(30.0 + 80.0 * (0.5 * wave + 0.5 * u))
                                     : std::round(50.0 * wave);
      }
  }

  // Piecewise-constant background states cycling through 0..r-1 so that the
  // mixing matrix has full rank r.
  Matrix mixing = Matrix::Zero(r, frames);
  std::uniform_int_distribution<Index> seg_len(std::max<Index>(1, frames / (4 * r)),
                                               std::max<Index>(1, frames / (2 * r)));
  Index state = 0;
  for (Index t = 0; t < frames;) {
    const Index len = std::min(seg_len(rng), frames - t);
    for (Index s = 0; s < len; ++s, ++t) {
      mixing(0, t) = 1.0;
      if (state > 0) mixing(state, t) = 1.0;
    }
    state = (state + 1) % r;
  }
  // Short videos may not reach every state; pin the first r frames.
  for (Index k = 1; k < r; ++k) {
    mixing.col(k).setZero();
    mixing(0, k) = 1.0;
    mixing(k, k) = 1.0;
  }

  GroundTruth gt;
  gt.low_rank = basis * mixing;
  gt.sparse = Matrix::Zero(pixels, frames);
  BoolMatrix mask = BoolMatrix::Constant(pixels, frames, false);

  const auto b = static_cast<Index>(config.blob_size);
  std::uniform_int_distribution<Index> start_y(0, h - b), start_x(0, w - b);
  std::uniform_int_distribution<Index> speed(1, 3);
  std::bernoulli_distribution flip(0.5);
  std::uniform_int_distribution<int> offset(60, 90);
  Index y = start_y(rng), x = start_x(rng);
  Index vy = speed(rng) * (flip(rng) ? -1 : 1), vx = speed(rng) * (flip(rng) ? -1 : 1);
  for (Index t = 0; t < frames; ++t) {
    for (Index dy = 0; dy < b; ++dy)
      for (Index dx = 0; dx < b; ++dx) {
        const Index p = (y + dy) * w + (x + dx);
        gt.sparse(p, t) = static_cast<double>(offset(rng));
        mask(p, t) = true;
      }
    if (y + vy < 0 || y + vy > h - b) vy = -vy;
    if (x + vx < 0 || x + vx > w - b) vx = -vx;
    y += vy;
    x += vx;
  }

  gt.observed = gt.low_rank + gt.sparse;
  gt.foreground_mask = std::move(mask);
  return gt;
}

}  // namespace rcur
