#pragma once

#include "bh/poly.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bh {

/// Distinct roots of f modulo a prime p. omega == p encodes a polynomial
/// that vanishes identically mod p.
struct RootSet {
  std::uint64_t p = 0;
  std::uint64_t omega = 0;
  /// Sorted residues in [0, p). Only populated when roots_listed is true.
  std::vector<std::uint64_t> roots;
  bool roots_listed = false;
};

/// Kronecker symbol (a|m) by the binary reciprocity algorithm.
int kronecker(std::int64_t a, std::int64_t m) noexcept;

/// Roots are listed by count_roots only for primes up to this bound.
inline constexpr std::uint64_t kCountRootsListBound = 256;
/// Below this bound list_roots scans residues directly.
inline constexpr std::uint64_t kBruteForceRootBound = 256;

/// omega_f(p) = deg gcd(x^p - x, f mod p), with the quadratic-character
/// shortcut for degree 2 when p does not divide 2*a*D.
/// Throws NotPrime.
RootSet count_roots(const Polynomial& f, std::uint64_t p);
RootSet count_roots(std::span<const std::int64_t> coeffs, std::uint64_t p);

/// Explicit sorted roots. Throws NotPrime or IdenticallyZero.
RootSet list_roots(const Polynomial& f, std::uint64_t p);
RootSet list_roots(std::span<const std::int64_t> coeffs, std::uint64_t p);

/// Rabin's test: is f (with p not dividing the leading coefficient)
/// irreducible over GF(p)?
bool is_irreducible_mod_p(std::span<const std::int64_t> coeffs, std::uint64_t p);

/// Square root modulo an odd prime (Tonelli-Shanks); nullopt for non-residues.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

/// v mod p in [0, p) for signed v.
std::uint64_t residue(std::int64_t v, std::uint64_t p) noexcept;

}  // namespace bh
