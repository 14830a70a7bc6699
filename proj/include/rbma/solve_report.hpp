#ifndef RBMA_SOLVE_REPORT_HPP
#define RBMA_SOLVE_REPORT_HPP

#include <optional>
#include <string_view>

#include "rbma/instance.hpp"
#include "rbma/rbmaa.hpp"

namespace rbma {

enum class Method { kRbmaa, kHungarian, kGreedy, kBruteForce };

std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

// Uniform result bundle for every solver.
struct SolveReport {
  Method method = Method::kRbmaa;
  BinaryMatrix assignment;
  double objective = 0.0;
  bool row_feasible = false;
  bool perfect_feasible = false;
  std::size_t iterations = 0;
  double runtime_ms = 0.0;
  // Present for rbmaa only.
  std::optional<RbmaaTrace> trace;
  std::optional<RbmParams> params;
};

// `cfg` is consulted only by rbmaa.
SolveReport run_method(const Instance& inst, Method method, const RbmaaConfig& cfg);

// Fraction of rows on which two assignments pick the same single column.
double agreement(const BinaryMatrix& a, const BinaryMatrix& b);

}  // namespace rbma

#endif  // RBMA_SOLVE_REPORT_HPP
