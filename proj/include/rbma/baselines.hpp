#ifndef RBMA_BASELINES_HPP
#define RBMA_BASELINES_HPP

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "rbma/instance.hpp"
#include "rbma/matrix.hpp"

namespace rbma {

enum class MatchingMethod { kHungarian, kGreedy, kBruteForce };

std::string_view to_string(MatchingMethod m) noexcept;

struct MatchingResult {
  // assignment[i] is the column of row i, or empty when row i is unmatched
  // (Hungarian with more rows than columns).
  std::vector<std::optional<std::size_t>> assignment;
  double total_weight = 0.0;
  MatchingMethod method = MatchingMethod::kHungarian;

  BinaryMatrix to_matrix(std::size_t cols) const;
};

// Maximum-weight one-to-one assignment (Kuhn-Munkres on costs max(w) - w_ij).
// When n > m, zero-weight dummy columns are added and rows that land on them
// are reported unmatched.
MatchingResult hungarian_max_weight(const WeightMatrix& w);

// Each row independently takes its heaviest column (lowest index on ties).
MatchingResult greedy_rowmax(const WeightMatrix& w);

inline constexpr std::size_t kBruteForceMaxRows = 8;

// Exhaustive search over injective assignments; requires n <= 8 and n <= m.
// Among optimal assignments returns the lexicographically smallest.
MatchingResult brute_force_optimal(const WeightMatrix& w);

}  // namespace rbma

#endif  // RBMA_BASELINES_HPP
