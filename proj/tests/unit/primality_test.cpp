#include "bh/error.hpp"
#include "bh/primality.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace bh {
namespace {

u128 parse_u128(const char* s) {
  u128 v = 0;
  for (; *s; ++s) v = v * 10 + static_cast<unsigned>(*s - '0');
  return v;
}

TEST(PrimesUpTo, SmallLimits) {
  EXPECT_EQ(primes_up_to(30), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
  EXPECT_EQ(primes_up_to(2), std::vector<std::uint64_t>{2});
  EXPECT_TRUE(primes_up_to(1).empty());
}

TEST(PrimesUpTo, MatchesSimpleSieveToOneMillion) {
  const auto primes = primes_up_to(1'000'000);
  const auto reference = oracle::simple_sieve(1'000'000);
  std::vector<std::uint64_t> expected;
  for (std::uint64_t i = 0; i < reference.size(); ++i) {
    if (reference[i]) expected.push_back(i);
  }
  EXPECT_EQ(expected.size(), 78498U);
  EXPECT_EQ(primes, expected);
}

TEST(PrimesUpTo, IndependentOfSegmentSize) {
  EXPECT_EQ(primes_up_to(3'000'000, 1 << 10), primes_up_to(3'000'000, 1 << 20));
}

TEST(PrimesUpTo, RejectsHugeLimit) {
  try {
    primes_up_to((std::uint64_t{1} << 40) + 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::limit_too_large);
  }
}

TEST(SegmentedSieve, SegmentBitsAgreeWithTrialDivision) {
  SegmentedSieve sieve(1'000'000'000'000ULL, 1'000'000'000'000ULL + 5000, 1 << 12);
  SieveSegment seg;
  std::size_t checked = 0;
  while (sieve.next(seg)) {
    EXPECT_EQ(seg.length, 1U << 12);
    for (std::size_t k = 0; k < seg.length; ++k) {
      const std::uint64_t v = seg.base + k;
      const bool in_range = v >= 1'000'000'000'000ULL && v <= 1'000'000'000'000ULL + 5000;
      EXPECT_EQ(seg.test(k), in_range && oracle::trial_division_is_prime(v)) << v;
      checked += in_range;
    }
  }
  EXPECT_EQ(checked, 5001U);
}

TEST(PrimeStream, StreamsAWindow) {
  PrimeStream stream(120, 100);
  std::vector<std::uint64_t> got;
  while (auto p = stream.next()) got.push_back(*p);
  EXPECT_EQ(got, (std::vector<std::uint64_t>{101, 103, 107, 109, 113}));
}

TEST(IsPrime, Boundaries) {
  EXPECT_FALSE(is_prime(u128{0}).prime);
  EXPECT_FALSE(is_prime(u128{1}).prime);
  EXPECT_TRUE(is_prime(u128{2}).prime);
  EXPECT_FALSE(is_prime(i128{-7}).prime);
  const auto m61 = is_prime(u128{(std::uint64_t{1} << 61) - 1});
  EXPECT_TRUE(m61.prime);
  EXPECT_EQ(m61.certainty, Certainty::deterministic);
}

TEST(IsPrime, SixTimesBillionSquaredPlusOne) {
  // 6 * 10^18 + 1 = 7 * 340335059 * 2518526477 (sympy factorint).
  EXPECT_FALSE(is_prime(u128{6'000'000'000'000'000'001ULL}).prime);
}

TEST(IsPrime, AgreesWithSieveToOneMillion) {
  const auto reference = oracle::simple_sieve(1'000'000);
  for (std::uint64_t n = 0; n <= 1'000'000; ++n) {
    ASSERT_EQ(is_prime(u128{n}).prime, static_cast<bool>(reference[n])) << n;
  }
}

TEST(IsPrime, AgreesWithTrialDivisionOn40BitIntegers) {
  std::mt19937_64 rng(40);
  std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t{1} << 39, (std::uint64_t{1} << 40) - 1);
  for (int i = 0; i < 10'000; ++i) {
    const std::uint64_t n = dist(rng) | 1;
    ASSERT_EQ(is_prime(u128{n}).prime, oracle::trial_division_is_prime(n)) << n;
  }
}

TEST(IsPrime, StrongPseudoprimesBelow64Bits) {
  // Strong pseudoprimes to several small bases; all composite.
  for (const std::uint64_t n : {2047ULL, 3215031751ULL, 3825123056546413051ULL}) {
    EXPECT_FALSE(is_prime(u128{n}).prime) << n;
  }
}

TEST(IsPrime, Above64BitsTaggedProbable) {
  // Verified with sympy.isprime.
  for (const char* s : {"18446744073709551629", "618970019642690137449562111", "162259276829213363391578010288127",
                        "170141183460469231731687303715884105727", "170141183460469231731687303715884105703",
                        "1017878568110080782349472477783", "99436813185968347955962756063"}) {
    const auto r = is_prime(parse_u128(s));
    EXPECT_TRUE(r.prime) << s;
    EXPECT_EQ(r.certainty, Certainty::probable) << s;
  }
}

TEST(IsPrime, RejectsCompositesAbove64Bits) {
  // Base-2 strong pseudoprimes p(2p - 1) found by search and rejected by
  // sympy's strong Lucas test, plus a 64x50-bit semiprime and 2^64 + 1.
  for (const char* s : {"147574056656752341661", "147574247971905036253", "147574341155623457701",
                        "20769187434140338997791188197203667", "18446744073709551617"}) {
    EXPECT_FALSE(is_prime(parse_u128(s)).prime) << s;
  }
  // Square of the largest prime below 2^62; exercises the perfect-square guard.
  const u128 p = 4611686018427387847ULL;
  EXPECT_FALSE(is_prime(p * p).prime);
}

TEST(Factorize, ReconstructsInput) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = rng() >> (rng() % 60);
    if (n < 2) continue;
    std::uint64_t product = 1;
    for (const auto& [p, e] : factorize(n)) {
      EXPECT_TRUE(oracle::trial_division_is_prime(p) || p > (1ULL << 32)) << p;
      for (int k = 0; k < e; ++k) product *= p;
    }
    EXPECT_EQ(product, n);
  }
}

}  // namespace
}  // namespace bh
