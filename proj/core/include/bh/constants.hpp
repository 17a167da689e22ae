#pragma once

#include "bh/poly.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace bh {

enum class ProductMode { naive, accelerated };

std::string_view to_string(ProductMode mode) noexcept;

/// A Bateman-Horn constant truncated at a prime bound.
struct EulerProductResult {
  double value = 0.0;
  std::uint64_t truncation = 0;
  ProductMode mode = ProductMode::naive;
  /// |partial product at truncation - partial product at truncation / 10|.
  /// A drift heuristic, not a bound.
  double error_estimate = 0.0;
  /// L(1, chi_D) when mode is accelerated.
  std::optional<double> l_value;
};

/// Partial products are folded in blocks of this many integers.
inline constexpr std::uint64_t kProductBlock = 1'000'000;

/// prod_{p <= truncation} (1 - 1/p)^(-M) (1 - omega(p)/p).
/// Throws InadmissibleSystem (ErrorCode::inadmissible).
EulerProductResult bh_constant_naive(const PolySystem& system, std::uint64_t truncation);

bool is_fundamental_discriminant(std::int64_t d) noexcept;

/// L(1, chi_D) for a negative fundamental discriminant D by the finite
/// character sum -(pi / |D|^(3/2)) * sum_{a < |D|} chi_D(a) a.
double l_value_negative_fundamental(std::int64_t d);

/// Discriminant b^2 - 4ac of a quadratic; throws NotQuadratic or Overflow.
std::int64_t discriminant(const Polynomial& f);

/// Single quadratic f with negative fundamental discriminant D:
/// C = (1 / L(1, chi_D)) * prod_p C_p / (1 - chi_D(p)/p), where the local
/// factor for p not dividing 2aD is (1 - chi_D(p)/(p-1)) / (1 - chi_D(p)/p).
/// Every exceptional prime p | 2aD contributes its exact factor regardless
/// of the truncation.
EulerProductResult bh_constant_accelerated(const Polynomial& f, std::uint64_t truncation);

/// Primes dividing 2 a D for a quadratic f, ascending.
std::vector<std::uint64_t> exceptional_primes(const Polynomial& f);

/// prod over p | 2aD of C_p / (1 - chi_D(p)/p), with C_p the exact local factor.
double exceptional_prefactor(const Polynomial& f);

/// Whether the accelerated path applies to this system.
bool supports_acceleration(const PolySystem& system) noexcept;

}  // namespace bh
