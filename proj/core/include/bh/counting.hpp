#pragma once

#include "bh/poly.hpp"
#include "bh/primality.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bh {

inline constexpr std::uint64_t kDefaultPresieveBound = 100'000;

struct CountConfig {
  /// Largest pre-sieve prime; 0 disables the pre-sieve.
  std::uint64_t presieve_bound = kDefaultPresieveBound;
  /// Candidates per work unit; a power of two.
  std::size_t segment_size = kDefaultSegmentSize;
  unsigned workers = 1;
  /// Called after each completed segment with (n processed, running count).
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

/// Number of n in [1, x] with every f_i(n) prime.
struct CountResult {
  std::uint64_t x = 0;
  std::uint64_t count = 0;
  Certainty certainty = Certainty::deterministic;
  double elapsed = 0.0;
};

/// Residue classes that make some f_i(n) divisible by a pre-sieve prime.
/// Valid for rejecting n > threshold(): there every f_i(n) exceeds the
/// pre-sieve bound, so divisibility implies compositeness.
class Presieve {
 public:
  struct Residue {
    std::uint32_t p;
    std::uint32_t root;
  };

  Presieve(const PolySystem& system, std::uint64_t bound);

  /// Largest n >= 0 with some f_i(n) <= bound (0 when none).
  std::uint64_t threshold() const noexcept { return threshold_; }
  std::uint64_t bound() const noexcept { return bound_; }
  std::span<const Residue> residues() const noexcept { return residues_; }

  /// Sets rejected[k] = 1 for each lo + k hit by some residue class.
  void mark(std::uint64_t lo, std::span<std::uint8_t> rejected) const;

 private:
  std::uint64_t bound_;
  std::uint64_t threshold_ = 0;
  std::vector<Residue> residues_;
};

/// Throws Inadmissible or Overflow.
CountResult count_simultaneous_primes(const PolySystem& system, std::uint64_t x,
                                      const CountConfig& config = {});

/// One result per ascending checkpoint from a single sweep.
std::vector<CountResult> count_series(const PolySystem& system,
                                      std::span<const std::uint64_t> checkpoints,
                                      const CountConfig& config = {});

}  // namespace bh
