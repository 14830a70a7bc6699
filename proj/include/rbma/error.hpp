#ifndef RBMA_ERROR_HPP
#define RBMA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rbma {

// Failure categories. The C API maps these one-to-one onto rbma_status values.
enum class ErrorCode {
  kInvalidArgument,
  kShapeMismatch,
  kIo,
  kParse,
  kVersion,
  kDimension,
  kInfeasible,
  kUnassignableRow,
  kDivergence,
  kTooLarge,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rbma

#endif  // RBMA_ERROR_HPP
