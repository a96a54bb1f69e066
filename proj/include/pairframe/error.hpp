#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pairframe {

enum class ErrorCode {
  NonSquare,
  NotHermitian,
  EmptyMatrix,
  NonFinite,
  Singular,
  DimensionMismatch,
  NotAFrame,
  InvalidExponent,
  ExponentMismatch,
  InvalidArgument,
  InvalidSpec,
  DimensionTooLarge,
  Parse,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pairframe
