#pragma once

#include "bh/error.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace bh::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,
  kExitInvalidSystem = 2,
  kExitOverflow = 3,
  kExitUsage = 4,
  kExitFailure = 5,
};

/// Runs one command. `args` includes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int exit_code_for(ErrorCode code) noexcept;

/// Non-negative integer from "1000000", "1e6" or "2.5e3". Throws
/// std::invalid_argument on anything else, including fractional values.
std::uint64_t parse_count(std::string_view text);
double parse_real(std::string_view text);

/// 10^2, 10^3, ... up to x_max, with x_max appended when it is not a power
/// of ten; a single row {x_max} when x_max < 100.
std::vector<std::uint64_t> decade_checkpoints(std::uint64_t x_max);

}  // namespace bh::cli
