#include "rbma/instance.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rbma/error.hpp"

namespace rbma {

WeightMatrix::WeightMatrix(RealMatrix entries) : entries_(std::move(entries)) {
  for (double x : entries_.flat()) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weight entries must be finite and nonnegative");
    }
  }
}

namespace {

void require_distinct(const std::vector<std::string>& labels, const char* side) {
  if (labels.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(side) + " label list is empty");
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("duplicate ") + side + " label '" + l + "'");
    }
  }
}

}  // namespace

Instance::Instance(std::vector<std::string> left_labels,
                   std::vector<std::string> right_labels, WeightMatrix weights)
    : left_(std::move(left_labels)),
      right_(std::move(right_labels)),
      weights_(std::move(weights)) {
  require_distinct(left_, "left");
  require_distinct(right_, "right");
  if (weights_.rows() != left_.size() || weights_.cols() != right_.size()) {
    throw Error(ErrorCode::kShapeMismatch, "weight matrix shape does not match labels");
  }
}

Instance build_weight_matrix(const std::vector<HistoryRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::kInvalidArgument, "no records");

  std::vector<std::string> left, right;
  std::unordered_map<std::string, std::size_t> left_index, right_index;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(records.size());

  auto intern = [](const std::string& label, std::vector<std::string>& labels,
                   std::unordered_map<std::string, std::size_t>& index) {
    auto [it, inserted] = index.try_emplace(label, labels.size());
    if (inserted) labels.push_back(label);
    return it->second;
  };

  for (const auto& r : records) {
    if (r.left_id.empty() || r.right_id.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "history record with empty label");
    }
    cells.emplace_back(intern(r.left_id, left, left_index),
                       intern(r.right_id, right, right_index));
  }

  RealMatrix counts(left.size(), right.size(), 0.0);
  for (auto [i, j] : cells) counts(i, j) += 1.0;
  return Instance(std::move(left), std::move(right), WeightMatrix(std::move(counts)));
}

BinaryMatrix binarize(const WeightMatrix& w) {
  BinaryMatrix out(w.rows(), w.cols(), 0);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) out(i, j) = w(i, j) > 0.0 ? 1 : 0;
  }
  return out;
}

double objective_value(const WeightMatrix& w, const BinaryMatrix& x) {
  if (w.rows() != x.rows() || w.cols() != x.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "objective: weight/assignment shape mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
      if (x(i, j)) total += w(i, j);
    }
  }
  return total;
}

FeasibilityReport check_feasibility(const BinaryMatrix& x, FeasibilityMode mode) {
  FeasibilityReport report;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::size_t sum = 0;
    for (auto v : x.row(i)) sum += v;
    if (sum != 1) report.row_violations.push_back({i, sum});
  }
  if (mode == FeasibilityMode::kPerfect) {
    if (x.rows() != x.cols()) {
      report.non_square = true;
    } else {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        std::size_t sum = 0;
        for (std::size_t i = 0; i < x.rows(); ++i) sum += x(i, j);
        if (sum != 1) report.col_violations.push_back({j, sum});
      }
    }
  }
  report.feasible = !report.non_square && report.row_violations.empty() &&
                    report.col_violations.empty();
  return report;
}

std::string FeasibilityReport::describe() const {
  if (feasible) return "feasible";
  std::ostringstream out;
  const char* sep = "";
  if (non_square) {
    out << "non-square";
    sep = "; ";
  }
  for (const auto& v : row_violations) {
    out << sep << "row " << v.index << " sum " << v.sum;
    sep = "; ";
  }
  for (const auto& v : col_violations) {
    out << sep << "column " << v.index << " sum " << v.sum;
    sep = "; ";
  }
  return out.str();
}

}  // namespace rbma
