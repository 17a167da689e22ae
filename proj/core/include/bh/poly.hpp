#pragma once

#include "bh/int128.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bh {

/// Integer polynomial in one variable with positive leading coefficient and
/// degree >= 1. Coefficients are stored in ascending degree order.
class Polynomial {
 public:
  /// Trailing zeros are trimmed. Throws ConstantPolynomial or NonPositiveLead.
  explicit Polynomial(std::vector<std::int64_t> coeffs);

  std::span<const std::int64_t> coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::int64_t leading_coefficient() const noexcept { return coeffs_.back(); }
  std::int64_t operator[](int k) const noexcept { return coeffs_[static_cast<std::size_t>(k)]; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// Accepts expressions in `n` built from integer literals, + - * ^ and
/// parentheses ("6*n^2+1", "(n+1)*(n-1)", "2n+1"), or an ascending
/// comma-separated coefficient list ("1,0,6").
Polynomial parse_polynomial(std::string_view text);

/// Canonical display form, descending powers: "6*n^2 + 1".
std::string format_polynomial(const Polynomial& f);

/// Exact Horner evaluation; throws Overflow outside the signed 128-bit range.
i128 evaluate(const Polynomial& f, std::int64_t n);

/// Double-precision Horner evaluation at a real point.
double evaluate_real(const Polynomial& f, double t) noexcept;

enum class IrreducibilityEvidence { certified, heuristic, failed };

std::string_view to_string(IrreducibilityEvidence e) noexcept;

/// Evidence for irreducibility over Z[x] of the primitive part of f:
/// rational root test, exact for degree <= 3; for higher degree a mod-p
/// irreducibility certificate over up to 25 small primes.
IrreducibilityEvidence irreducibility_evidence(const Polynomial& f);

/// An ordered system of distinct polynomials together with derived data.
struct PolySystem {
  std::vector<Polynomial> polys;
  Polynomial product;
  std::int64_t n0 = 0;
  bool admissible = false;
  /// Prime p with omega_f(p) = p when the system is not admissible.
  std::optional<std::uint64_t> witness;
  std::vector<IrreducibilityEvidence> evidence;

  std::size_t size() const noexcept { return polys.size(); }
  int total_degree() const noexcept { return product.degree(); }
  /// Product of the individual degrees.
  std::int64_t degree_product() const noexcept;
};

/// Computes the derived data without rejecting inadmissible systems.
/// Still throws DuplicatePolynomial, IrreducibilityFailed and Overflow.
PolySystem analyze_system(std::vector<Polynomial> polys);

/// As analyze_system, and additionally throws Inadmissible (with witness).
PolySystem build_system(std::vector<Polynomial> polys);

/// Largest integer n in [floor, ceil(B)] with some f_i(n) <= threshold, where
/// B bounds the real roots of every f_i - threshold; nullopt when none.
std::optional<std::int64_t> last_n_at_most(std::span<const Polynomial> polys, i128 threshold,
                                           std::int64_t floor);

/// Cauchy bound (rounded up) on the real roots of f - threshold.
std::int64_t cauchy_bound(const Polynomial& f, i128 threshold);

}  // namespace bh
