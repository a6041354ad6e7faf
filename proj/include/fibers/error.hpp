#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibers {

enum class ErrorCode {
  DimensionMismatch,
  Overflow,
  UnboundedSearch,
  PointednessViolated,
  BoxTooLarge,
  SizeBudgetExceeded,
  NegativeInput,
  MoveNotInKernel,
  EmptyGraph,
  EmptyFiber,
  IsolatedVertex,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fibers
