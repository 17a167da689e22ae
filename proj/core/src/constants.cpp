#include "bh/constants.hpp"

#include "bh/error.hpp"
#include "bh/modular.hpp"
#include "bh/primality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace bh {

namespace {

constexpr std::int64_t kMaxLValueConductor = std::int64_t{1} << 31;

// Streams primes in [2, truncation] and folds local factors block by block.
// Boundaries are the multiples of kProductBlock and truncation / 10; the
// running product is also captured at the latter for the drift estimate.
class BlockedProduct {
 public:
  explicit BlockedProduct(std::uint64_t truncation) : checkpoint_(truncation / 10) {
    for (std::uint64_t b = kProductBlock; b < truncation; b += kProductBlock) boundaries_.push_back(b);
    boundaries_.push_back(checkpoint_);
    std::sort(boundaries_.begin(), boundaries_.end());
    boundaries_.erase(std::unique(boundaries_.begin(), boundaries_.end()), boundaries_.end());
  }

  void multiply(std::uint64_t p, double factor) {
    while (next_ < boundaries_.size() && p > boundaries_[next_]) fold();
    block_ *= factor;
  }

  void finish() {
    while (next_ < boundaries_.size()) fold();
    total_ *= block_;
    block_ = 1.0;
  }

  double total() const { return total_; }
  double at_checkpoint() const { return at_checkpoint_; }

 private:
  void fold() {
    total_ *= block_;
    block_ = 1.0;
    if (boundaries_[next_] == checkpoint_) at_checkpoint_ = total_;
    ++next_;
  }

  std::uint64_t checkpoint_;
  std::vector<std::uint64_t> boundaries_;
  std::size_t next_ = 0;
  double total_ = 1.0;
  double block_ = 1.0;
  double at_checkpoint_ = 1.0;
};

bool is_squarefree(std::uint64_t n) {
  for (const auto& [p, e] : factorize(n)) {
    (void)p;
    if (e > 1) return false;
  }
  return true;
}

void require_truncation(std::uint64_t truncation) {
  if (truncation < 2) throw Error(ErrorCode::invalid_argument, "truncation must be at least 2");
}

}  // namespace

std::string_view to_string(ProductMode mode) noexcept {
  return mode == ProductMode::naive ? "naive" : "accelerated";
}

EulerProductResult bh_constant_naive(const PolySystem& system, std::uint64_t truncation) {
  require_truncation(truncation);
  if (!system.admissible) {
    throw Error(ErrorCode::inadmissible,
                "system is not admissible (witness prime " + std::to_string(system.witness.value_or(0)) + ")",
                system.witness);
  }
  const auto m = static_cast<int>(system.size());
  BlockedProduct product(truncation);
  for_each_prime(2, truncation, [&](std::uint64_t p) {
    const double pd = static_cast<double>(p);
    const double omega = static_cast<double>(count_roots(system.product, p).omega);
    const double inverse_euler = pd / (pd - 1.0);
    // (1 - omega/p)(1 - 1/p)^-m with one factor folded into a single
    // division, so omega == m == 1 gives exactly 1.
    double factor = (pd - omega) / (pd - 1.0);
    for (int i = 1; i < m; ++i) factor *= inverse_euler;
    product.multiply(p, factor);
  });
  product.finish();

  EulerProductResult result;
  result.value = product.total();
  result.truncation = truncation;
  result.mode = ProductMode::naive;
  result.error_estimate = std::abs(product.total() - product.at_checkpoint());
  return result;
}

bool is_fundamental_discriminant(std::int64_t d) noexcept {
  if (d == 0 || d == 1 || d == INT64_MIN) return false;
  const std::int64_t r = ((d % 4) + 4) % 4;
  const auto abs_u = [](std::int64_t v) { return static_cast<std::uint64_t>(v < 0 ? -v : v); };
  if (r == 1) return is_squarefree(abs_u(d));
  if (r == 0) {
    const std::int64_t m = d / 4;
    const std::int64_t mr = ((m % 4) + 4) % 4;
    return (mr == 2 || mr == 3) && is_squarefree(abs_u(m));
  }
  return false;
}

double l_value_negative_fundamental(std::int64_t d) {
  if (d >= 0) throw Error(ErrorCode::not_negative, "discriminant " + std::to_string(d) + " is not negative");
  if (!is_fundamental_discriminant(d)) {
    throw Error(ErrorCode::not_fundamental, std::to_string(d) + " is not a fundamental discriminant");
  }
  const std::int64_t q = -d;
  if (q > kMaxLValueConductor) {
    throw Error(ErrorCode::invalid_argument, "conductor " + std::to_string(q) + " is too large");
  }
  std::int64_t sum = 0;
  for (std::int64_t a = 1; a < q; ++a) sum += kronecker(d, a) * a;
  const double qd = static_cast<double>(q);
  return -std::numbers::pi / (qd * std::sqrt(qd)) * static_cast<double>(sum);
}

std::int64_t discriminant(const Polynomial& f) {
  if (f.degree() != 2) {
    throw Error(ErrorCode::not_quadratic, format_polynomial(f) + " is not quadratic");
  }
  const i128 d = static_cast<i128>(f[1]) * f[1] - 4 * static_cast<i128>(f[2]) * f[0];
  if (d > INT64_MAX || d < INT64_MIN + 1) {
    throw Error(ErrorCode::overflow, "discriminant exceeds the signed 64-bit range");
  }
  return static_cast<std::int64_t>(d);
}

bool supports_acceleration(const PolySystem& system) noexcept {
  if (system.size() != 1 || system.polys.front().degree() != 2) return false;
  try {
    const std::int64_t d = discriminant(system.polys.front());
    return d < 0 && -d <= kMaxLValueConductor && is_fundamental_discriminant(d);
  } catch (const Error&) {
    return false;
  }
}

std::vector<std::uint64_t> exceptional_primes(const Polynomial& f) {
  const std::int64_t d = discriminant(f);
  std::vector<std::uint64_t> primes{2};
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(f.leading_coefficient()))) primes.push_back(p);
  for (const auto& [p, e] : factorize(static_cast<std::uint64_t>(d < 0 ? -d : d))) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

double exceptional_prefactor(const Polynomial& f) {
  const std::int64_t d = discriminant(f);
  // Each factor is p (p - omega) / ((p - 1)(p - chi)); numerator and
  // denominator are accumulated separately to keep small cases exact.
  double numerator = 1.0, denominator = 1.0;
  for (const std::uint64_t p : exceptional_primes(f)) {
    const double pd = static_cast<double>(p);
    const double omega = static_cast<double>(count_roots(f, p).omega);
    const double chi = kronecker(d, static_cast<std::int64_t>(p));
    numerator *= pd * (pd - omega);
    denominator *= (pd - 1.0) * (pd - chi);
  }
  return numerator / denominator;
}

EulerProductResult bh_constant_accelerated(const Polynomial& f, std::uint64_t truncation) {
  require_truncation(truncation);
  const std::int64_t d = discriminant(f);
  if (d >= 0 || !is_fundamental_discriminant(d)) {
    throw Error(ErrorCode::discriminant_not_fundamental,
                "discriminant " + std::to_string(d) + " of " + format_polynomial(f) +
                    " is not a negative fundamental discriminant");
  }
  const PolySystem system = analyze_system({f});
  if (!system.admissible) {
    throw Error(ErrorCode::inadmissible,
                format_polynomial(f) + " vanishes identically mod " + std::to_string(*system.witness),
                system.witness);
  }
  const double l_value = l_value_negative_fundamental(d);

  const std::vector<std::uint64_t> exceptional = exceptional_primes(f);
  const double prefactor = exceptional_prefactor(f);

  BlockedProduct product(truncation);
  for_each_prime(2, truncation, [&](std::uint64_t p) {
    if (std::binary_search(exceptional.begin(), exceptional.end(), p)) return;
    const double pd = static_cast<double>(p);
    const double chi = kronecker(d, static_cast<std::int64_t>(p));
    product.multiply(p, (1.0 - chi / (pd - 1.0)) / (1.0 - chi / pd));
  });
  product.finish();

  const double scale = prefactor / l_value;
  EulerProductResult result;
  result.value = scale * product.total();
  result.truncation = truncation;
  result.mode = ProductMode::accelerated;
  result.error_estimate = std::abs(scale * product.total() - scale * product.at_checkpoint());
  result.l_value = l_value;
  return result;
}

}  // namespace bh
