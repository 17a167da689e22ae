#include "bh/poly.hpp"

#include "bh/error.hpp"
#include "bh/modular.hpp"
#include "bh/primality.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

namespace bh {

namespace {

constexpr int kMaxParsedDegree = 64;
constexpr std::int64_t kMaxScanRange = std::int64_t{1} << 28;
constexpr std::size_t kMaxRationalCandidates = 4'000'000;
constexpr int kIrreducibilityPrimes = 25;

[[noreturn]] void overflow(const std::string& what) {
  throw Error(ErrorCode::overflow, what + " exceeds the signed 64-bit range");
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) overflow("coefficient");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) overflow("coefficient");
  return r;
}

// Dense coefficient vectors used while parsing; may be zero or constant.
using Coeffs = std::vector<std::int64_t>;

void trim(Coeffs& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

Coeffs add(Coeffs a, const Coeffs& b, std::int64_t sign) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = checked_add(a[i], checked_mul(sign, b[i]));
  trim(a);
  return a;
}

Coeffs multiply(const Coeffs& a, const Coeffs& b) {
  Coeffs out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = checked_add(out[i + j], checked_mul(a[i], b[j]));
    }
  }
  trim(out);
  if (static_cast<int>(out.size()) - 1 > kMaxParsedDegree) {
    throw Error(ErrorCode::overflow, "polynomial degree exceeds " + std::to_string(kMaxParsedDegree));
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Coeffs parse() {
    Coeffs result = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::syntax_error,
                "cannot parse polynomial \"" + std::string(text_) + "\" at offset " +
                    std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Coeffs expression() {
    Coeffs acc = term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      acc = add(std::move(acc), term(), c == '+' ? 1 : -1);
    }
  }

  Coeffs term() {
    Coeffs acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = multiply(acc, unary());
      } else if (c == 'n' || c == '(') {
        acc = multiply(acc, unary());
      } else {
        return acc;
      }
    }
  }

  Coeffs unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return add(Coeffs{0}, unary(), -1);
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Coeffs power() {
    Coeffs base = atom();
    if (peek() != '^') return base;
    ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be a non-negative integer");
    const std::int64_t e = integer();
    if (e > kMaxParsedDegree) {
      throw Error(ErrorCode::overflow, "exponent exceeds " + std::to_string(kMaxParsedDegree));
    }
    Coeffs result{1};
    for (std::int64_t i = 0; i < e; ++i) result = multiply(result, base);
    return result;
  }

  Coeffs atom() {
    const char c = peek();
    if (c == 'n') {
      ++pos_;
      return Coeffs{0, 1};
    }
    if (c == '(') {
      ++pos_;
      Coeffs inner = expression();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Coeffs{integer()};
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    (void)ptr;
    if (ec == std::errc::result_out_of_range) overflow("integer literal");
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Coeffs parse_coefficient_list(std::string_view text) {
  Coeffs out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (!item.empty() && item.front() == '+') item.remove_prefix(1);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec == std::errc::result_out_of_range) overflow("coefficient");
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::syntax_error,
                  "invalid coefficient \"" + std::string(item) + "\" in list \"" + std::string(text) + "\"");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::uint64_t magnitude(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

std::int64_t content(std::span<const std::int64_t> coeffs) {
  std::uint64_t g = 0;
  for (const auto c : coeffs) g = std::gcd(g, magnitude(c));
  return static_cast<std::int64_t>(g);
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t count = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

using boost::multiprecision::cpp_int;

// v^d * f(u/v) == 0, evaluated exactly.
bool is_rational_root(std::span<const std::int64_t> coeffs, std::int64_t u, std::uint64_t v) {
  cpp_int acc = 0;
  cpp_int vpow = 1;
  const cpp_int uu = u;
  const cpp_int vv = v;
  // Horner in homogeneous form: acc = acc * u + c_k * v^(d-k).
  const int d = static_cast<int>(coeffs.size()) - 1;
  for (int k = d; k >= 0; --k) {
    acc = acc * uu + cpp_int(coeffs[static_cast<std::size_t>(k)]) * vpow;
    vpow *= vv;
  }
  return acc == 0;
}

enum class RationalRoot { none, found, unknown };

RationalRoot find_rational_root(std::span<const std::int64_t> coeffs) {
  if (coeffs[0] == 0) return RationalRoot::found;
  const std::int64_t lead = coeffs.back();
  const auto us = divisors(magnitude(coeffs[0]));
  const auto vs = divisors(magnitude(lead));
  if (us.size() * vs.size() > kMaxRationalCandidates) return RationalRoot::unknown;
  double max_ratio = 0.0;
  for (std::size_t k = 0; k + 1 < coeffs.size(); ++k) {
    max_ratio = std::max(max_ratio, std::abs(static_cast<double>(coeffs[k]) / static_cast<double>(lead)));
  }
  const double bound = (1.0 + max_ratio) * (1.0 + 1e-9);
  for (const std::uint64_t v : vs) {
    for (const std::uint64_t u : us) {
      if (static_cast<double>(u) / static_cast<double>(v) > bound) break;
      if (std::gcd(u, v) != 1) continue;
      const auto su = static_cast<std::int64_t>(u);
      if (is_rational_root(coeffs, su, v) || is_rational_root(coeffs, -su, v)) return RationalRoot::found;
    }
  }
  return RationalRoot::none;
}

}  // namespace

Polynomial::Polynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.size() < 2) {
    throw Error(ErrorCode::constant_polynomial, "polynomial must have degree >= 1");
  }
  if (coeffs_.back() <= 0) {
    throw Error(ErrorCode::non_positive_lead,
                "leading coefficient must be positive, got " + std::to_string(coeffs_.back()));
  }
}

Polynomial parse_polynomial(std::string_view text) {
  Coeffs coeffs = text.find(',') != std::string_view::npos ? parse_coefficient_list(text)
                                                           : Parser(text).parse();
  return Polynomial(std::move(coeffs));
}

std::string format_polynomial(const Polynomial& f) {
  std::string out;
  for (int k = f.degree(); k >= 0; --k) {
    const std::int64_t c = f[k];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    const std::uint64_t mag = magnitude(c);
    if (k == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag) + "*";
    out += "n";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

i128 evaluate(const Polynomial& f, std::int64_t n) {
  i128 acc = 0;
  const auto coeffs = f.coeffs();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    if (__builtin_mul_overflow(acc, static_cast<i128>(n), &acc) ||
        __builtin_add_overflow(acc, static_cast<i128>(*it), &acc)) {
      throw Error(ErrorCode::overflow,
                  "value of " + format_polynomial(f) + " at n = " + std::to_string(n) +
                      " exceeds the signed 128-bit range");
    }
  }
  return acc;
}

double evaluate_real(const Polynomial& f, double t) noexcept {
  double acc = 0.0;
  const auto coeffs = f.coeffs();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + static_cast<double>(*it);
  return acc;
}

std::string_view to_string(IrreducibilityEvidence e) noexcept {
  switch (e) {
    case IrreducibilityEvidence::certified: return "certified";
    case IrreducibilityEvidence::heuristic: return "heuristic";
    case IrreducibilityEvidence::failed: return "failed";
  }
  return "unknown";
}

IrreducibilityEvidence irreducibility_evidence(const Polynomial& f) {
  if (f.degree() == 1) return IrreducibilityEvidence::certified;
  const std::int64_t g = content(f.coeffs());
  std::vector<std::int64_t> prim(f.coeffs().begin(), f.coeffs().end());
  for (auto& c : prim) c /= g;

  const RationalRoot root = find_rational_root(prim);
  if (root == RationalRoot::found) return IrreducibilityEvidence::failed;
  if (f.degree() <= 3 && root == RationalRoot::none) return IrreducibilityEvidence::certified;

  int tried = 0;
  for (std::uint64_t p = 2; tried < kIrreducibilityPrimes; ++p) {
    if (!is_prime_u64(p)) continue;
    if (residue(prim.back(), p) == 0) continue;
    ++tried;
    if (is_irreducible_mod_p(prim, p)) return IrreducibilityEvidence::certified;
  }
  return IrreducibilityEvidence::heuristic;
}

std::int64_t PolySystem::degree_product() const noexcept {
  std::int64_t d = 1;
  for (const auto& f : polys) d *= f.degree();
  return d;
}

std::int64_t cauchy_bound(const Polynomial& f, i128 threshold) {
  const auto coeffs = f.coeffs();
  const i128 lead = coeffs.back();
  i128 max_abs = 0;
  for (std::size_t k = 0; k + 1 < coeffs.size(); ++k) {
    i128 c = coeffs[k];
    if (k == 0) c -= threshold;
    max_abs = std::max(max_abs, c < 0 ? -c : c);
  }
  const i128 bound = 1 + (max_abs + lead - 1) / lead;
  if (bound > static_cast<i128>(INT64_MAX)) overflow("root bound");
  return static_cast<std::int64_t>(bound);
}

std::optional<std::int64_t> last_n_at_most(std::span<const Polynomial> polys, i128 threshold,
                                           std::int64_t floor) {
  std::int64_t top = floor;
  for (const auto& f : polys) top = std::max(top, cauchy_bound(f, threshold));
  if (static_cast<i128>(top) - floor > kMaxScanRange) {
    throw Error(ErrorCode::overflow, "search range for polynomial values <= " + to_string(threshold) +
                                         " is too large");
  }
  for (std::int64_t n = top; n >= floor; --n) {
    for (const auto& f : polys) {
      if (evaluate(f, n) <= threshold) return n;
    }
  }
  return std::nullopt;
}

PolySystem analyze_system(std::vector<Polynomial> polys) {
  if (polys.empty()) throw Error(ErrorCode::invalid_argument, "a system needs at least one polynomial");
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (polys[i] == polys[j]) {
        throw Error(ErrorCode::duplicate_polynomial,
                    "polynomial " + format_polynomial(polys[i]) + " appears more than once");
      }
    }
  }

  std::vector<IrreducibilityEvidence> evidence;
  evidence.reserve(polys.size());
  for (const auto& f : polys) {
    evidence.push_back(irreducibility_evidence(f));
    if (evidence.back() == IrreducibilityEvidence::failed) {
      throw Error(ErrorCode::irreducibility_failed,
                  "polynomial " + format_polynomial(f) + " has a rational root and is reducible");
    }
  }

  Coeffs product{1};
  for (const auto& f : polys) {
    product = multiply(product, Coeffs(f.coeffs().begin(), f.coeffs().end()));
  }

  PolySystem system{std::move(polys), Polynomial(std::move(product)), 0, true, std::nullopt,
                    std::move(evidence)};

  // Vanishing identically mod p: either p <= deg with every residue a root,
  // or p divides every coefficient.
  std::optional<std::uint64_t> witness;
  for (std::uint64_t p = 2; p <= static_cast<std::uint64_t>(system.product.degree()); ++p) {
    if (!is_prime_u64(p)) continue;
    if (count_roots(system.product, p).omega == p) {
      witness = p;
      break;
    }
  }
  if (const std::int64_t g = content(system.product.coeffs()); g > 1) {
    const std::uint64_t p = factorize(static_cast<std::uint64_t>(g)).front().first;
    if (!witness || p < *witness) witness = p;
  }
  system.admissible = !witness.has_value();
  system.witness = witness;

  std::int64_t bound = 0;
  for (const auto& f : system.polys) bound = std::max(bound, cauchy_bound(f, 1));
  system.n0 = last_n_at_most(system.polys, 1, -bound).value_or(-bound);
  return system;
}

PolySystem build_system(std::vector<Polynomial> polys) {
  PolySystem system = analyze_system(std::move(polys));
  if (!system.admissible) {
    throw Error(ErrorCode::inadmissible,
                "system is not admissible: the product vanishes identically mod " +
                    std::to_string(*system.witness),
                system.witness);
  }
  return system;
}

}  // namespace bh
