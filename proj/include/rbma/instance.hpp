#ifndef RBMA_INSTANCE_HPP
#define RBMA_INSTANCE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "rbma/matrix.hpp"

namespace rbma {

// One observed pairing of a left-set element with a right-set element.
struct HistoryRecord {
  std::string left_id;
  std::string right_id;

  friend bool operator==(const HistoryRecord&, const HistoryRecord&) = default;
};

// Nonnegative co-occurrence counts; entry (i, j) is how often left i was
// paired with right j. Stored as reals so synthetic instances may be
// fractional.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  // Throws kInvalidArgument on a negative or non-finite entry.
  explicit WeightMatrix(RealMatrix entries);

  std::size_t rows() const noexcept { return entries_.rows(); }
  std::size_t cols() const noexcept { return entries_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const RealMatrix& entries() const noexcept { return entries_; }

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  RealMatrix entries_;
};

// A labelled assignment problem: n left labels, m right labels, n x m weights.
class Instance {
 public:
  // Throws kInvalidArgument if a label list is empty or has duplicates, or
  // kShapeMismatch if the weights do not have shape (n, m).
  Instance(std::vector<std::string> left_labels,
           std::vector<std::string> right_labels, WeightMatrix weights);

  std::size_t rows() const noexcept { return left_.size(); }
  std::size_t cols() const noexcept { return right_.size(); }
  const std::vector<std::string>& left_labels() const noexcept { return left_; }
  const std::vector<std::string>& right_labels() const noexcept { return right_; }
  const WeightMatrix& weights() const noexcept { return weights_; }

 private:
  std::vector<std::string> left_;
  std::vector<std::string> right_;
  WeightMatrix weights_;
};

enum class FeasibilityMode { kRowOnly, kPerfect };

struct LineViolation {
  std::size_t index;
  std::size_t sum;
};

struct FeasibilityReport {
  bool feasible = true;
  bool non_square = false;
  std::vector<LineViolation> row_violations;
  std::vector<LineViolation> col_violations;

  // Human-readable summary, e.g. "row 0 sum 2".
  std::string describe() const;
};

// Labels in first-appearance order; duplicate pairs accumulate.
// Throws kInvalidArgument("no records") on empty input.
Instance build_weight_matrix(const std::vector<HistoryRecord>& records);

BinaryMatrix binarize(const WeightMatrix& w);

// Sum of w_ij * x_ij. Throws kShapeMismatch if shapes differ.
double objective_value(const WeightMatrix& w, const BinaryMatrix& x);

FeasibilityReport check_feasibility(const BinaryMatrix& x, FeasibilityMode mode);

}  // namespace rbma

#endif  // RBMA_INSTANCE_HPP
