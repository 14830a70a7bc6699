#include "rbma/solve_report.hpp"

#include <chrono>

#include "rbma/baselines.hpp"
#include "rbma/error.hpp"

namespace rbma {

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::kRbmaa: return "rbmaa";
    case Method::kHungarian: return "hungarian";
    case Method::kGreedy: return "greedy";
    case Method::kBruteForce: return "brute_force";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : {Method::kRbmaa, Method::kHungarian, Method::kGreedy, Method::kBruteForce}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

SolveReport run_method(const Instance& inst, Method method, const RbmaaConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  SolveReport r;
  r.method = method;
  const auto start = Clock::now();
  switch (method) {
    case Method::kRbmaa: {
      RbmaaResult res = solve_rbmaa(inst, cfg);
      r.assignment = std::move(res.assignment);
      r.iterations = res.trace.outer_iterations;
      r.trace = std::move(res.trace);
      r.params = std::move(res.params);
      break;
    }
    case Method::kHungarian: {
      const auto res = hungarian_max_weight(inst.weights());
      r.assignment = res.to_matrix(inst.cols());
      // One augmenting-path search per row.
      r.iterations = inst.rows();
      break;
    }
    case Method::kGreedy:
      r.assignment = greedy_rowmax(inst.weights()).to_matrix(inst.cols());
      break;
    case Method::kBruteForce:
      r.assignment = brute_force_optimal(inst.weights()).to_matrix(inst.cols());
      break;
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  r.objective = objective_value(inst.weights(), r.assignment);
  r.row_feasible = check_feasibility(r.assignment, FeasibilityMode::kRowOnly).feasible;
  r.perfect_feasible = check_feasibility(r.assignment, FeasibilityMode::kPerfect).feasible;
  return r;
}

double agreement(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::kShapeMismatch, "agreement: shape mismatch");
  if (a.rows() == 0) return 0.0;
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto ra = a.row(i);
    const auto rb = b.row(i);
    std::size_t ones = 0;
    bool equal = true;
    for (std::size_t j = 0; j < ra.size(); ++j) {
      ones += ra[j];
      equal = equal && ra[j] == rb[j];
    }
    if (equal && ones == 1) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(a.rows());
}

}  // namespace rbma
