#pragma once

// Wall-clock and accuracy comparison of the uniform robust CUR pipeline
// against AltProj on the full matrix.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rcur/cur.hpp"
#include "rcur/synth.hpp"

namespace rcur {

struct BenchReport {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  double alpha = 0.0;
  double kappa = 0.0;
  std::uint64_t seed = 0;
  // Medians over successful trials; NaN if none succeeded.
  double rcur_seconds = 0.0;
  double rpca_seconds = 0.0;
  double speedup = 0.0;
  double rcur_rel_error = 0.0;
  double rpca_rel_error = 0.0;
  std::size_t trials = 0;
  std::size_t failures = 0;
};

/// One fresh instance per trial, seeds split from config.seed. Only the
/// solver calls are timed. Errors are against the generated L.
BenchReport bench_compare(const SynthConfig& config, const RcurConfig& rcur_config,
                          std::size_t trials);

/// Fixed input (e.g. a frame sequence). Without truth the two estimates are
/// scored against each other.
BenchReport bench_compare(const Matrix& d, const Matrix* truth, std::size_t r,
                          const RcurConfig& rcur_config, std::size_t trials, std::uint64_t seed);

enum class TableFormat { markdown, csv };

std::string emit_table(const std::vector<BenchReport>& reports, TableFormat format);

std::string to_json(const BenchReport& report);

}  // namespace rcur
