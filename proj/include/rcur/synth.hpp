#pragma once

// Seeded ground-truth generators: incoherent low-rank L, alpha-sparse S,
// their sum D, and a synthetic video with a moving foreground blob.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "rcur/matrix.hpp"

namespace rcur {

struct SynthConfig {
  std::size_t m = 200;
  std::size_t n = 200;
  std::size_t r = 3;
  double kappa = 5.0;
  double alpha = 0.02;
  /// Outlier magnitude as a multiple of mean |L|.
  double outlier_magnitude = 10.0;
  std::uint64_t seed = 0;

  void validate() const;
};

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct GroundTruth {
  Matrix low_rank;
  Matrix sparse;
  Matrix observed;
  /// Video variant only: true where the foreground blob covers a pixel.
  std::optional<BoolMatrix> foreground_mask;
};

/// W diag(sigma) V^T with Gaussian-then-orthonormalized factors and singular
/// values spaced geometrically from 1 down to 1/kappa.
Matrix gen_lowrank(std::size_t m, std::size_t n, std::size_t r, double kappa, std::uint64_t seed);

/// Support with at most floor(alpha n) nonzeros per row and floor(alpha m)
/// per column; values uniform on +-[0.5, 1.5] * magnitude * reference_scale.
Matrix gen_sparse(std::size_t m, std::size_t n, double alpha, double magnitude,
                  std::uint64_t seed, double reference_scale);

GroundTruth generate(const SynthConfig& config);

struct VideoConfig {
  std::size_t frames = 100;
  std::size_t height = 64;
  std::size_t width = 80;
  std::size_t r = 2;
  double alpha = 0.06;
  std::size_t blob_size = 16;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Columns are vectorized frames (row-major pixels). Every value is an
/// integer in [0, 255], so the video survives 8-bit PGM storage exactly.
GroundTruth gen_video(const VideoConfig& config);

}  // namespace rcur
