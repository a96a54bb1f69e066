#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pairframe/types.hpp"

namespace pairframe::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInvalidInput = 2,
  kDimensionMismatch = 3,
  kNotInvertible = 4,
};

/// Runs `pairframe <args...>` (args exclude the program name), writing the
/// report to out and diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "re", "re+imi", "re-imi" or "imi". nullopt when malformed.
std::optional<Complex> parse_complex(std::string_view text);

/// Six significant digits, as used by every text report.
std::string format6(double x);

}  // namespace pairframe::cli
