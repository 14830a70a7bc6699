#include "rbma/baselines.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rbma/error.hpp"

namespace rbma {
namespace {

using Assignment = std::vector<std::optional<std::size_t>>;

WeightMatrix from_rows(const std::vector<std::vector<double>>& w) {
  RealMatrix e(w.size(), w[0].size());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w[0].size(); ++j) e(i, j) = w[i][j];
  return WeightMatrix(std::move(e));
}

std::vector<std::vector<double>> random_weights(std::mt19937_64& gen, std::size_t n, std::size_t m) {
  std::vector<std::vector<double>> w(n, std::vector<double>(m));
  for (auto& row : w)
    for (double& x : row) x = static_cast<double>(gen() % 10);
  return w;
}

TEST(HungarianTest, Examples) {
  const auto r = hungarian_max_weight(from_rows({{1, 2}, {3, 1}}));
  EXPECT_EQ(r.assignment, (Assignment{1, 0}));
  EXPECT_EQ(r.total_weight, 5.0);
  EXPECT_EQ(r.method, MatchingMethod::kHungarian);

  const auto one = hungarian_max_weight(from_rows({{7}}));
  EXPECT_EQ(one.assignment, (Assignment{0}));
  EXPECT_EQ(one.total_weight, 7.0);
}

TEST(HungarianTest, DiagonalDominance) {
  for (std::size_t n = 1; n <= 7; ++n) {
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) w[i][i] = 10.0;
    const auto r = hungarian_max_weight(from_rows(w));
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(r.assignment[i], i);
    EXPECT_EQ(r.total_weight, 10.0 * n);
  }
}

TEST(HungarianTest, MatchesEnumerationOnRandomInstances) {
  std::mt19937_64 gen(1234);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + gen() % 6, m = n + gen() % 3;
    const auto w = random_weights(gen, n, m);
    const auto r = hungarian_max_weight(from_rows(w));
    EXPECT_EQ(r.total_weight, oracle::best_injective_total(w));
    EXPECT_EQ(r.total_weight, brute_force_optimal(from_rows(w)).total_weight);

    std::vector<int> used(m, 0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_TRUE(r.assignment[i].has_value());
      EXPECT_EQ(used[*r.assignment[i]]++, 0);
      total += w[i][*r.assignment[i]];
    }
    EXPECT_EQ(total, r.total_weight);
  }
}

TEST(HungarianTest, MoreRowsThanColumnsLeavesRowsUnmatched) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + gen() % 4, n = m + 1 + gen() % 3;
    const auto w = random_weights(gen, n, m);
    const auto r = hungarian_max_weight(from_rows(w));

    std::size_t matched = 0;
    std::vector<int> used(m, 0);
    for (const auto& a : r.assignment) {
      if (!a) continue;
      ++matched;
      EXPECT_EQ(used[*a]++, 0);
    }
    EXPECT_EQ(matched, m);
    EXPECT_EQ(r.to_matrix(m).rows(), n);

    // Transposing gives the same optimum.
    std::vector<std::vector<double>> wt(m, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) wt[j][i] = w[i][j];
    EXPECT_EQ(r.total_weight, oracle::best_injective_total(wt));
  }
}

TEST(GreedyTest, Examples) {
  const auto r = greedy_rowmax(from_rows({{1, 2}, {3, 1}}));
  EXPECT_EQ(r.assignment, (Assignment{1, 0}));
  EXPECT_EQ(r.total_weight, 5.0);

  const auto many = greedy_rowmax(from_rows({{5, 1}, {4, 0}}));
  EXPECT_EQ(many.assignment, (Assignment{0, 0}));
  EXPECT_EQ(many.total_weight, 9.0);

  const auto ties = greedy_rowmax(from_rows({{3, 3, 3}}));
  EXPECT_EQ(ties.assignment, (Assignment{0}));
}

TEST(GreedyTest, AlwaysRowFeasible) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + gen() % 9, m = 1 + gen() % 9;
    const auto r = greedy_rowmax(from_rows(random_weights(gen, n, m)));
    EXPECT_TRUE(check_feasibility(r.to_matrix(m), FeasibilityMode::kRowOnly).feasible);
  }
}

TEST(BruteForceTest, Examples) {
  EXPECT_EQ(brute_force_optimal(from_rows({{1, 2}, {3, 1}})).total_weight, 5.0);

  const auto row = brute_force_optimal(from_rows({{1, 9, 4}}));
  EXPECT_EQ(row.assignment, (Assignment{1}));
  EXPECT_EQ(row.total_weight, 9.0);

  const auto flat = brute_force_optimal(from_rows(std::vector<std::vector<double>>(4, std::vector<double>(5, 2.0))));
  EXPECT_EQ(flat.assignment, (Assignment{0, 1, 2, 3}));
  EXPECT_EQ(flat.total_weight, 8.0);
}

TEST(BruteForceTest, SizeLimits) {
  try {
    brute_force_optimal(from_rows(std::vector<std::vector<double>>(9, std::vector<double>(9, 1.0))));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
  EXPECT_THROW(brute_force_optimal(from_rows({{1}, {2}})), Error);
}

TEST(MatchingResultTest, ToMatrix) {
  MatchingResult r;
  r.assignment = {1, std::nullopt, 0};
  const BinaryMatrix x = r.to_matrix(2);
  EXPECT_EQ(x(0, 1), 1);
  EXPECT_EQ(x(1, 0) + x(1, 1), 0);
  EXPECT_EQ(x(2, 0), 1);
  EXPECT_EQ(to_string(MatchingMethod::kBruteForce), "brute_force");
}

}  // namespace
}  // namespace rbma
