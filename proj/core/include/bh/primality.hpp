#pragma once

#include "bh/int128.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace bh {

enum class Certainty { deterministic, probable };

/// Combines two certainty tags; probable dominates.
constexpr Certainty combine(Certainty a, Certainty b) noexcept {
  return (a == Certainty::probable || b == Certainty::probable) ? Certainty::probable
                                                                : Certainty::deterministic;
}

struct PrimalityResult {
  bool prime = false;
  Certainty certainty = Certainty::deterministic;

  explicit operator bool() const noexcept { return prime; }
};

inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 20;
inline constexpr std::uint64_t kMaxPrimeListLimit = std::uint64_t{1} << 40;

// Modular helpers shared with the modular arithmetic kernel.
constexpr std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

/// Deterministic Miller-Rabin for the whole 64-bit range
/// (witnesses 2, 3, 5, ..., 37).
bool is_prime_u64(std::uint64_t n) noexcept;

/// Below 2^64 the answer is deterministic. Above, trial division by primes
/// below 1000 followed by Baillie-PSW; the result is tagged probable.
PrimalityResult is_prime(u128 v) noexcept;

/// Negative values and 0, 1 are not prime.
PrimalityResult is_prime(i128 v) noexcept;

/// Prime factorization (Pollard-Brent), ascending primes with multiplicity.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

/// A fixed-size window of the integers: bit k is set iff base + k is prime.
struct SieveSegment {
  std::uint64_t base = 0;
  std::size_t length = 0;
  std::vector<std::uint64_t> bits;

  bool test(std::size_t k) const noexcept { return (bits[k >> 6] >> (k & 63)) & 1U; }
};

/// Segmented Eratosthenes over [lo, hi]. Segments have a fixed power-of-two
/// length and are aligned to multiples of that length; bits outside
/// [lo, hi] are cleared.
class SegmentedSieve {
 public:
  SegmentedSieve(std::uint64_t lo, std::uint64_t hi,
                 std::size_t segment_size = kDefaultSegmentSize);

  /// Fills `segment` with the next window; returns false when exhausted.
  bool next(SieveSegment& segment);

  std::size_t segment_size() const noexcept { return segment_size_; }

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::size_t segment_size_;
  std::uint64_t cursor_;
  bool done_ = false;
  std::vector<std::uint32_t> base_primes_;
};

/// Pull-style stream of the primes in [lo, hi], ascending.
class PrimeStream {
 public:
  explicit PrimeStream(std::uint64_t hi, std::uint64_t lo = 2,
                       std::size_t segment_size = kDefaultSegmentSize);

  std::optional<std::uint64_t> next();

 private:
  SegmentedSieve sieve_;
  SieveSegment segment_;
  std::size_t word_ = 0;
  std::uint64_t pending_ = 0;
  bool have_segment_ = false;
};

template <typename Fn>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn,
                    std::size_t segment_size = kDefaultSegmentSize) {
  PrimeStream stream(hi, lo, segment_size);
  while (auto p = stream.next()) fn(*p);
}

/// Every prime <= limit, ascending. Throws LimitTooLarge above 2^40.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit,
                                        std::size_t segment_size = kDefaultSegmentSize);

}  // namespace bh
