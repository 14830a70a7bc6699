#include "rbma/rbmaa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rbma/error.hpp"

namespace rbma {

namespace {

// Decorrelates the training stream from the initialisation stream.
constexpr std::uint64_t kTrainStreamSalt = 0x9E3779B97F4A7C15ull;

std::size_t row_sum(const BinaryMatrix& m, std::size_t i) {
  std::size_t s = 0;
  for (auto x : m.row(i)) s += x;
  return s;
}

BinaryVector row_vector(const BinaryMatrix& m, std::size_t i) {
  const auto r = m.row(i);
  return BinaryVector(r.begin(), r.end());
}

}  // namespace

void RbmaaConfig::validate() const {
  train.validate();
  if (!(quantile_level > 0.0 && quantile_level < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "quantile level must lie in (0,1)");
  }
  if (max_outer_iters < 1) throw Error(ErrorCode::kInvalidArgument, "max_outer_iters must be >= 1");
  if (hidden_units && *hidden_units == 0) {
    throw Error(ErrorCode::kInvalidArgument, "hidden_units must be >= 1");
  }
}

std::size_t RbmaaConfig::hidden_for(std::size_t visible) const {
  return hidden_units ? *hidden_units : (visible + 1) / 2;
}

double quantile_threshold(std::span<const double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "quantile of empty list");
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::kInvalidArgument, "quantile level must lie in (0,1)");
  std::vector<double> sorted(values.begin(), values.end());
  const double n = static_cast<double>(sorted.size());
  // The small slack keeps products like 0.07 * 100 = 7.000000000000001 on rank 7.
  auto rank = static_cast<std::size_t>(std::ceil(q * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   sorted.end());
  return sorted[rank - 1];
}

BinaryMatrix decide_assignments(const RealMatrix& probs, double epsilon) {
  BinaryMatrix out(probs.rows(), probs.cols(), 0);
  for (std::size_t k = 0; k < probs.size(); ++k) out.flat()[k] = probs.flat()[k] > epsilon ? 1 : 0;
  return out;
}

RbmaaResult solve_rbmaa(const Instance& inst, const RbmaaConfig& cfg) {
  cfg.validate();
  const std::size_t n = inst.rows();
  const std::size_t m = inst.cols();
  const BinaryMatrix support = binarize(inst.weights());

  for (std::size_t i = 0; i < n; ++i) {
    if (row_sum(support, i) == 0) {
      throw Error(ErrorCode::kUnassignableRow,
                  "unassignable row " + std::to_string(i) + " ('" + inst.left_labels()[i] +
                      "'): no historical evidence");
    }
  }

  RbmaaResult result;
  RbmaaTrace& trace = result.trace;

  std::vector<std::size_t> open;
  BinaryMatrix assignment(n, m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (row_sum(support, i) == 1) {
      for (std::size_t j = 0; j < m; ++j) assignment(i, j) = support(i, j);
      ++trace.presolved_rows;
    } else {
      open.push_back(i);
    }
  }
  if (open.empty()) {
    result.assignment = std::move(assignment);
    return result;
  }

  TrainingState state(init_params(m, cfg.hidden_for(m), cfg.train.seed),
                      cfg.train.seed ^ kTrainStreamSalt);

  // The first pass learns from every row; later passes only from open rows.
  std::vector<BinaryVector> data;
  data.reserve(n);
  for (std::size_t i = 0; i < n; ++i) data.push_back(row_vector(support, i));

  RealMatrix scores(n, m, 0.0);
  while (!open.empty() && trace.outer_iterations < cfg.max_outer_iters) {
    train_epochs(state, data, cfg.train);
    ++trace.outer_iterations;

    for (std::size_t i = 0; i < n; ++i) {
      const RealVector recon = reconstruction_probs(state.current, support.row(i));
      for (std::size_t j = 0; j < m; ++j) scores(i, j) = support(i, j) ? recon[j] : 0.0;
    }
    const double epsilon = quantile_threshold(scores.flat(), cfg.quantile_level);
    trace.threshold_per_iter.push_back(epsilon);

    std::vector<std::size_t> still_open;
    std::size_t resolved = 0;
    for (std::size_t i : open) {
      std::size_t hits = 0, col = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (scores(i, j) > epsilon) {
          ++hits;
          col = j;
        }
      }
      if (hits == 1) {
        assignment(i, col) = 1;
        ++resolved;
      } else {
        still_open.push_back(i);
      }
    }
    trace.rows_resolved_per_iter.push_back(resolved);
    open = std::move(still_open);

    data.clear();
    for (std::size_t i : open) data.push_back(row_vector(support, i));
  }

  const WeightMatrix& w = inst.weights();
  for (std::size_t i : open) {
    std::size_t best = m;
    for (std::size_t j = 0; j < m; ++j) {
      if (!support(i, j)) continue;
      if (best == m || scores(i, j) > scores(i, best) ||
          (scores(i, j) == scores(i, best) && w(i, j) > w(i, best))) {
        best = j;
      }
    }
    assignment(i, best) = 1;
    trace.fallback_rows.push_back(i);
  }

  result.assignment = std::move(assignment);
  result.params = std::move(state.current);
  return result;
}

}  // namespace rbma
