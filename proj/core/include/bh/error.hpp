#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bh {

enum class ErrorCode {
  syntax_error,
  non_positive_lead,
  constant_polynomial,
  overflow,
  duplicate_polynomial,
  inadmissible,
  irreducibility_failed,
  not_prime,
  identically_zero,
  not_fundamental,
  not_negative,
  not_quadratic,
  discriminant_not_fundamental,
  limit_too_large,
  singular_integrand,
  tolerance_not_met,
  invalid_argument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carried by every fallible operation in the library.
/// `witness()` is set for inadmissible systems (the prime p with omega(p) = p).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::uint64_t> witness = std::nullopt)
      : std::runtime_error(message), code_(code), witness_(witness) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::uint64_t> witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::optional<std::uint64_t> witness_;
};

}  // namespace bh
