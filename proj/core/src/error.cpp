#include "bh/error.hpp"
#include "bh/int128.hpp"

#include <algorithm>

namespace bh {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::non_positive_lead: return "NonPositiveLead";
    case ErrorCode::constant_polynomial: return "ConstantPolynomial";
    case ErrorCode::overflow: return "Overflow";
    case ErrorCode::duplicate_polynomial: return "DuplicatePolynomial";
    case ErrorCode::inadmissible: return "Inadmissible";
    case ErrorCode::irreducibility_failed: return "IrreducibilityFailed";
    case ErrorCode::not_prime: return "NotPrime";
    case ErrorCode::identically_zero: return "IdenticallyZero";
    case ErrorCode::not_fundamental: return "NotFundamental";
    case ErrorCode::not_negative: return "NotNegative";
    case ErrorCode::not_quadratic: return "NotQuadratic";
    case ErrorCode::discriminant_not_fundamental: return "DiscriminantNotFundamental";
    case ErrorCode::limit_too_large: return "LimitTooLarge";
    case ErrorCode::singular_integrand: return "SingularIntegrand";
    case ErrorCode::tolerance_not_met: return "ToleranceNotMet";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(i128 v) {
  if (v >= 0) return to_string(static_cast<u128>(v));
  return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
}

}  // namespace bh
