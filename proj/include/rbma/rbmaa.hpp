#ifndef RBMA_RBMAA_HPP
#define RBMA_RBMAA_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rbma/instance.hpp"
#include "rbma/matrix.hpp"
#include "rbma/rbm.hpp"

namespace rbma {

struct RbmaaConfig {
  TrainConfig train;
  double quantile_level = 0.99;
  unsigned max_outer_iters = 100;
  // Hidden unit count; empty means ceil(m / 2).
  std::optional<std::size_t> hidden_units;

  void validate() const;
  std::size_t hidden_for(std::size_t visible) const;
};

struct RbmaaTrace {
  std::size_t outer_iterations = 0;
  // Rows whose binarized history already had a single candidate.
  std::size_t presolved_rows = 0;
  std::vector<std::size_t> rows_resolved_per_iter;
  std::vector<double> threshold_per_iter;
  std::vector<std::size_t> fallback_rows;
};

struct RbmaaResult {
  BinaryMatrix assignment;
  RbmaaTrace trace;
  // Trained model; empty when the binarized matrix was already row-feasible.
  std::optional<RbmParams> params;
};

// Nearest-rank quantile: the ceil(q * N)-th smallest of N values.
double quantile_threshold(std::span<const double> values, double q);

// 1 where probs > epsilon (strict), else 0.
BinaryMatrix decide_assignments(const RealMatrix& probs, double epsilon);

// Iterative RBM assignment. Each row of the result holds exactly one 1, and
// only at a column where the instance weight is positive.
//
// Rows of the binarized weights are the training vectors. Each outer
// iteration continues training on the still-unresolved rows, scores every
// row by mean-field reconstruction masked to its historical support,
// thresholds at the configured quantile of all n*m scores, and freezes each
// open row left with a single 1. Rows still open after max_outer_iters go to their best-scoring
// supported column (ties: larger weight, then lower index).
//
// Throws kUnassignableRow if some row has no positive weight.
RbmaaResult solve_rbmaa(const Instance& inst, const RbmaaConfig& cfg);

}  // namespace rbma

#endif  // RBMA_RBMAA_HPP
