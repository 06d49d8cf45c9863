#pragma once

// Index selection: seeded uniform sampling, sample-size rules and the
// deterministic greedy removal column subset selection.

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "rcur/matrix.hpp"

namespace rcur {

enum class SampleMode { with_replacement, without_replacement };

enum class SizeVariant {
  log_n,        // c mu r ln(universe)
  log_rn,       // c mu r ln(r universe)
  paper_video,  // c r ln(universe)
};

struct SizeHeuristic {
  double c = 5.0;
  SizeVariant variant = SizeVariant::log_n;
};

struct SampleConfig {
  SampleMode mode = SampleMode::without_replacement;
  std::uint64_t seed = 0;
  std::variant<std::size_t, SizeHeuristic> size = SizeHeuristic{};

  void validate() const;
  /// Concrete count for a universe of the given size; mu feeds the heuristic.
  std::size_t resolve(std::size_t universe, std::size_t r, double mu) const;
};

IndexSet sample_uniform(std::size_t universe, std::size_t count, SampleMode mode,
                        std::uint64_t seed);

std::size_t sample_size(std::size_t universe, std::size_t r, double mu, double c,
                        SizeVariant variant);

struct GreedyStep {
  std::size_t removed = 0;  // original column index
  double criterion = 0.0;
};

struct GreedyResult {
  IndexSet selected;
  std::vector<GreedyStep> steps;
};

/// Starting from all m columns of the r x m matrix x, repeatedly drops the
/// column whose removal least increases tr((X_S X_S^T)^-1) until k remain.
/// Ties go to the smallest index; the survivors are returned ascending.
GreedyResult greedy_css_trace(const Matrix& x, std::size_t k);
IndexSet greedy_css(const Matrix& x, std::size_t k);
IndexSet greedy_css(const DenseMatrix& x, std::size_t k);

}  // namespace rcur
