#include "rbma/baselines.hpp"

#include <algorithm>
#include <limits>

#include "rbma/error.hpp"

namespace rbma {

std::string_view to_string(MatchingMethod m) noexcept {
  switch (m) {
    case MatchingMethod::kHungarian: return "hungarian";
    case MatchingMethod::kGreedy: return "greedy";
    case MatchingMethod::kBruteForce: return "brute_force";
  }
  return "unknown";
}

BinaryMatrix MatchingResult::to_matrix(std::size_t cols) const {
  BinaryMatrix x(assignment.size(), cols, 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i]) x(i, *assignment[i]) = 1;
  }
  return x;
}

namespace {

void require_nonempty(const WeightMatrix& w, const char* who) {
  if (w.rows() == 0 || w.cols() == 0) {
    throw Error(ErrorCode::kInvalidArgument, std::string(who) + ": empty weight matrix");
  }
}

double total_of(const WeightMatrix& w, const std::vector<std::optional<std::size_t>>& a) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i]) total += w(i, *a[i]);
  }
  return total;
}

}  // namespace

MatchingResult hungarian_max_weight(const WeightMatrix& w) {
  require_nonempty(w, "hungarian");
  const std::size_t n = w.rows();
  const std::size_t real_cols = w.cols();
  const std::size_t m = std::max(n, real_cols);

  double wmax = 0.0;
  for (double x : w.entries().flat()) wmax = std::max(wmax, x);
  // Dummy columns carry weight 0, i.e. cost wmax.
  auto cost = [&](std::size_t i, std::size_t j) {
    return j < real_cols ? wmax - w(i, j) : wmax;
  };

  // Shortest augmenting paths with row/column potentials; 1-based with
  // column 0 as the virtual root.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> match_col(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match_col[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match_col[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match_col[j0] = match_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  MatchingResult r;
  r.method = MatchingMethod::kHungarian;
  r.assignment.assign(n, std::nullopt);
  for (std::size_t j = 1; j <= m; ++j) {
    if (match_col[j] != 0 && j - 1 < real_cols) r.assignment[match_col[j] - 1] = j - 1;
  }
  r.total_weight = total_of(w, r.assignment);
  return r;
}

MatchingResult greedy_rowmax(const WeightMatrix& w) {
  require_nonempty(w, "greedy");
  MatchingResult r;
  r.method = MatchingMethod::kGreedy;
  r.assignment.resize(w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < w.cols(); ++j) {
      if (w(i, j) > w(i, best)) best = j;
    }
    r.assignment[i] = best;
  }
  r.total_weight = total_of(w, r.assignment);
  return r;
}

MatchingResult brute_force_optimal(const WeightMatrix& w) {
  require_nonempty(w, "brute force");
  const std::size_t n = w.rows();
  const std::size_t m = w.cols();
  if (n > kBruteForceMaxRows) throw Error(ErrorCode::kTooLarge, "too large for brute force");
  if (n > m) throw Error(ErrorCode::kInvalidArgument, "brute force requires rows <= columns");

  std::vector<std::size_t> current(n), best;
  std::vector<char> taken(m, 0);
  double best_total = -std::numeric_limits<double>::infinity();

  // Depth-first in increasing column order visits assignments in
  // lexicographic order, so a strict improvement test keeps the smallest.
  auto search = [&](auto&& self, std::size_t row, double acc) -> void {
    if (row == n) {
      if (acc > best_total) {
        best_total = acc;
        best = current;
      }
      return;
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (taken[j]) continue;
      taken[j] = 1;
      current[row] = j;
      self(self, row + 1, acc + w(row, j));
      taken[j] = 0;
    }
  };
  search(search, 0, 0.0);

  MatchingResult r;
  r.method = MatchingMethod::kBruteForce;
  r.assignment.assign(best.begin(), best.end());
  r.total_weight = total_of(w, r.assignment);
  return r;
}

}  // namespace rbma
