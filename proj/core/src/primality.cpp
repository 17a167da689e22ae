#include "bh/primality.hpp"

#include "bh/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>

namespace bh {

namespace {

constexpr std::array<std::uint64_t, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

std::vector<std::uint32_t> simple_sieve(std::uint32_t limit) {
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

const std::vector<std::uint32_t>& small_primes_below_1000() {
  static const std::vector<std::uint32_t> primes = simple_sieve(999);
  return primes;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool strong_probable_prime_u64(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  const int s = std::countr_zero(d);
  d >>= s;
  std::uint64_t x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1 || x == 0) return true;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// ---- 128-bit Montgomery arithmetic; modulus must be odd and < 2^127. ----

void mul_wide(u128 a, u128 b, u128& hi, u128& lo) {
  const auto a0 = static_cast<std::uint64_t>(a);
  const auto a1 = static_cast<std::uint64_t>(a >> 64);
  const auto b0 = static_cast<std::uint64_t>(b);
  const auto b1 = static_cast<std::uint64_t>(b >> 64);
  const u128 p00 = static_cast<u128>(a0) * b0;
  const u128 p01 = static_cast<u128>(a0) * b1;
  const u128 p10 = static_cast<u128>(a1) * b0;
  const u128 p11 = static_cast<u128>(a1) * b1;
  const u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) + static_cast<std::uint64_t>(p10);
  lo = (mid << 64) | static_cast<std::uint64_t>(p00);
  hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
}

class Montgomery128 {
 public:
  explicit Montgomery128(u128 n) : n_(n) {
    u128 inv = n;  // correct to 3 bits for odd n
    for (int i = 0; i < 7; ++i) inv *= 2 - n * inv;
    neg_inv_ = -inv;
    u128 r = (-n) % n;  // 2^128 mod n
    r2_ = r;
    for (int i = 0; i < 128; ++i) r2_ = add(r2_, r2_);
    one_ = r;
  }

  u128 modulus() const { return n_; }
  u128 one() const { return one_; }

  u128 reduce(u128 hi, u128 lo) const {
    const u128 m = lo * neg_inv_;
    u128 mh, ml;
    mul_wide(m, n_, mh, ml);
    const u128 sum_lo = lo + ml;
    const u128 carry = sum_lo < lo ? 1 : 0;
    u128 t = hi + mh + carry;
    if (t >= n_) t -= n_;
    return t;
  }

  u128 mul(u128 a, u128 b) const {
    u128 hi, lo;
    mul_wide(a, b, hi, lo);
    return reduce(hi, lo);
  }

  u128 to_mont(u128 a) const { return mul(a % n_, r2_); }
  u128 from_mont(u128 a) const { return reduce(0, a); }

  u128 add(u128 a, u128 b) const {
    u128 s = a + b;
    if (s >= n_) s -= n_;
    return s;
  }
  u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + (n_ - b); }
  u128 half(u128 a) const { return (a & 1) ? (a + n_) >> 1 : a >> 1; }

  u128 pow(u128 base, u128 exp) const {
    u128 result = one_;
    while (exp != 0) {
      if (exp & 1) result = mul(result, base);
      base = mul(base, base);
      exp >>= 1;
    }
    return result;
  }

 private:
  u128 n_;
  u128 neg_inv_;
  u128 r2_;
  u128 one_;
};

bool strong_probable_prime_base2(const Montgomery128& mont) {
  const u128 n = mont.modulus();
  u128 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const u128 minus_one = mont.to_mont(n - 1);
  u128 x = mont.pow(mont.to_mont(2), d);
  if (x == mont.one() || x == minus_one) return true;
  for (int r = 1; r < s; ++r) {
    x = mont.mul(x, x);
    if (x == minus_one) return true;
  }
  return false;
}

int jacobi_u128(u128 a, u128 n) {
  int result = 1;
  a %= n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const auto r = static_cast<unsigned>(n & 7);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_perfect_square(u128 n) {
  auto r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

u128 signed_to_residue(std::int64_t v, u128 n) {
  if (v >= 0) return static_cast<u128>(v) % n;
  const u128 m = static_cast<u128>(-v) % n;
  return m == 0 ? 0 : n - m;
}

// Strong Lucas test with Selfridge parameters (P = 1, Q = (1 - D) / 4).
bool strong_lucas_probable_prime(const Montgomery128& mont) {
  const u128 n = mont.modulus();
  if (is_perfect_square(n)) return false;
  std::int64_t d_param = 5;
  for (;;) {
    const int j = jacobi_u128(signed_to_residue(d_param, n), n);
    if (j == -1) break;
    if (j == 0) {
      const u128 abs_d = static_cast<u128>(d_param < 0 ? -d_param : d_param);
      if (abs_d != n) return false;
    }
    d_param = d_param > 0 ? -(d_param + 2) : -(d_param - 2);
  }
  const std::int64_t q_param = (1 - d_param) / 4;

  const u128 d_m = mont.to_mont(signed_to_residue(d_param, n));
  const u128 q_m = mont.to_mont(signed_to_residue(q_param, n));

  u128 k = n + 1;
  int s = 0;
  while ((k & 1) == 0) {
    k >>= 1;
    ++s;
  }

  u128 u = mont.one();  // U_1
  u128 v = mont.one();  // V_1 = P
  u128 qk = q_m;        // Q^1
  int bits = 0;
  for (u128 t = k; t != 0; t >>= 1) ++bits;
  for (int bit = bits - 2; bit >= 0; --bit) {
    u = mont.mul(u, v);
    v = mont.sub(mont.mul(v, v), mont.add(qk, qk));
    qk = mont.mul(qk, qk);
    if ((k >> bit) & 1) {
      const u128 new_u = mont.half(mont.add(u, v));
      const u128 new_v = mont.half(mont.add(mont.mul(d_m, u), v));
      u = new_u;
      v = new_v;
      qk = mont.mul(qk, q_m);
    }
  }
  if (u == 0 || v == 0) return true;
  for (int r = 1; r < s; ++r) {
    v = mont.sub(mont.mul(v, v), mont.add(qk, qk));
    if (v == 0) return true;
    qk = mont.mul(qk, qk);
  }
  return false;
}

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const auto f = [&](std::uint64_t v) {
      return static_cast<std::uint64_t>((static_cast<u128>(mul_mod(v, v, n)) + c) % n);
    };
    std::uint64_t r = 1;
    constexpr std::uint64_t batch = 128;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += batch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (const std::uint64_t p : kWitnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  for (const std::uint64_t a : kWitnesses) {
    if (!strong_probable_prime_u64(n, a)) return false;
  }
  return true;
}

PrimalityResult is_prime(u128 v) noexcept {
  if ((v >> 64) == 0) return {is_prime_u64(static_cast<std::uint64_t>(v)), Certainty::deterministic};
  for (const std::uint32_t p : small_primes_below_1000()) {
    if (v % p == 0) return {false, Certainty::deterministic};
  }
  // Values at or above 2^127 are outside the supported range of the
  // Montgomery kernel; polynomial values are signed 128-bit so never reach it.
  if ((v >> 127) != 0) return {false, Certainty::probable};
  const Montgomery128 mont(v);
  if (!strong_probable_prime_base2(mont)) return {false, Certainty::deterministic};
  if (!strong_lucas_probable_prime(mont)) return {false, Certainty::deterministic};
  return {true, Certainty::probable};
}

PrimalityResult is_prime(i128 v) noexcept {
  if (v < 2) return {false, Certainty::deterministic};
  return is_prime(static_cast<u128>(v));
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> result;
  if (n < 2) return result;
  std::vector<std::uint64_t> primes;
  for (const std::uint32_t p : small_primes_below_1000()) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  for (const std::uint64_t p : primes) {
    if (!result.empty() && result.back().first == p) {
      ++result.back().second;
    } else {
      result.emplace_back(p, 1);
    }
  }
  return result;
}

// ---- Segmented sieve ----

SegmentedSieve::SegmentedSieve(std::uint64_t lo, std::uint64_t hi, std::size_t segment_size)
    : lo_(std::max<std::uint64_t>(lo, 2)), hi_(hi), segment_size_(segment_size) {
  if (segment_size_ < 64 || !std::has_single_bit(segment_size_)) {
    throw Error(ErrorCode::invalid_argument, "segment size must be a power of two >= 64");
  }
  if (hi_ == UINT64_MAX) {
    throw Error(ErrorCode::limit_too_large, "sieve upper bound must be below 2^64 - 1");
  }
  done_ = lo_ > hi_;
  cursor_ = lo_ & ~static_cast<std::uint64_t>(segment_size_ - 1);
  if (!done_) base_primes_ = simple_sieve(static_cast<std::uint32_t>(isqrt_u64(hi_)));
}

bool SegmentedSieve::next(SieveSegment& segment) {
  if (done_) return false;
  const std::uint64_t base = cursor_;
  const std::uint64_t end = base + segment_size_;  // exclusive
  segment.base = base;
  segment.length = segment_size_;
  segment.bits.assign(segment_size_ / 64, ~std::uint64_t{0});

  auto clear = [&](std::uint64_t k) { segment.bits[k >> 6] &= ~(std::uint64_t{1} << (k & 63)); };

  for (const std::uint32_t q : base_primes_) {
    const std::uint64_t qq = static_cast<std::uint64_t>(q) * q;
    if (qq >= end) break;
    std::uint64_t start = std::max(qq, (base + q - 1) / q * q);
    for (std::uint64_t m = start; m < end; m += q) clear(m - base);
  }
  // Mask everything outside [lo, hi].
  for (std::uint64_t k = 0; k < segment_size_; ++k) {
    const std::uint64_t v = base + k;
    if (v >= lo_) break;
    clear(k);
  }
  if (hi_ < end - 1) {
    for (std::uint64_t v = hi_ + 1; v < end; ++v) clear(v - base);
  }
  if (end - 1 >= hi_) {
    done_ = true;
  } else {
    cursor_ = end;
  }
  return true;
}

PrimeStream::PrimeStream(std::uint64_t hi, std::uint64_t lo, std::size_t segment_size)
    : sieve_(lo, hi, segment_size) {}

std::optional<std::uint64_t> PrimeStream::next() {
  for (;;) {
    if (pending_ != 0) {
      const int bit = std::countr_zero(pending_);
      pending_ &= pending_ - 1;
      return segment_.base + (static_cast<std::uint64_t>(word_ - 1) << 6) + bit;
    }
    if (have_segment_ && word_ < segment_.bits.size()) {
      pending_ = segment_.bits[word_++];
      continue;
    }
    if (!sieve_.next(segment_)) return std::nullopt;
    have_segment_ = true;
    word_ = 0;
  }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit, std::size_t segment_size) {
  if (limit > kMaxPrimeListLimit) {
    throw Error(ErrorCode::limit_too_large, "prime list limit exceeds 2^40");
  }
  std::vector<std::uint64_t> primes;
  if (limit >= 10) {
    const double l = static_cast<double>(limit);
    primes.reserve(static_cast<std::size_t>(1.26 * l / std::log(l)) + 16);
  }
  for_each_prime(2, limit, [&](std::uint64_t p) { primes.push_back(p); }, segment_size);
  return primes;
}

}  // namespace bh
