#include "bh/modular.hpp"

#include "bh/error.hpp"
#include "bh/primality.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

namespace bh {

namespace {

// Polynomials over GF(p), ascending coefficients, no trailing zeros
// (the zero polynomial is empty).
using GfPoly = std::vector<std::uint64_t>;

void trim(GfPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const GfPoly& a) { return static_cast<int>(a.size()) - 1; }

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  const std::uint64_t s = a + b;
  return (s >= p || s < a) ? s - p : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

GfPoly reduce(std::span<const std::int64_t> coeffs, std::uint64_t p) {
  GfPoly out(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) out[k] = residue(coeffs[k], p);
  trim(out);
  return out;
}

void make_monic(GfPoly& a, std::uint64_t p) {
  if (a.empty() || a.back() == 1) return;
  const std::uint64_t inv = inv_mod(a.back(), p);
  for (auto& c : a) c = mul_mod(c, inv, p);
}

// a mod m for monic m.
void rem_monic(GfPoly& a, const GfPoly& m, std::uint64_t p) {
  const int dm = deg(m);
  for (int i = deg(a); i >= dm; --i) {
    const std::uint64_t c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const std::size_t shift = static_cast<std::size_t>(i - dm);
    for (int j = 0; j <= dm; ++j) {
      auto& target = a[shift + static_cast<std::size_t>(j)];
      target = sub_mod(target, mul_mod(c, m[static_cast<std::size_t>(j)], p), p);
    }
  }
  trim(a);
}

// Quotient and remainder of a by monic m.
GfPoly div_monic(GfPoly a, const GfPoly& m, std::uint64_t p) {
  const int dm = deg(m);
  if (deg(a) < dm) return {};
  GfPoly q(static_cast<std::size_t>(deg(a) - dm + 1), 0);
  for (int i = deg(a); i >= dm; --i) {
    const std::uint64_t c = a[static_cast<std::size_t>(i)];
    const std::size_t shift = static_cast<std::size_t>(i - dm);
    q[shift] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) {
      auto& target = a[shift + static_cast<std::size_t>(j)];
      target = sub_mod(target, mul_mod(c, m[static_cast<std::size_t>(j)], p), p);
    }
  }
  trim(q);
  return q;
}

GfPoly mul(const GfPoly& a, const GfPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  GfPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], p), p);
    }
  }
  trim(out);
  return out;
}

GfPoly mul_rem(const GfPoly& a, const GfPoly& b, const GfPoly& m, std::uint64_t p) {
  GfPoly out = mul(a, b, p);
  rem_monic(out, m, p);
  return out;
}

// base^e mod m, m monic.
GfPoly pow_rem(GfPoly base, std::uint64_t e, const GfPoly& m, std::uint64_t p) {
  rem_monic(base, m, p);
  GfPoly result{1};
  rem_monic(result, m, p);
  while (e != 0) {
    if (e & 1) result = mul_rem(result, base, m, p);
    e >>= 1;
    if (e != 0) base = mul_rem(base, base, m, p);
  }
  return result;
}

GfPoly gcd(GfPoly a, GfPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    make_monic(b, p);
    rem_monic(a, b, p);
    std::swap(a, b);
  }
  make_monic(a, p);
  return a;
}

GfPoly sub(GfPoly a, const GfPoly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = sub_mod(a[i], b[i], p);
  trim(a);
  return a;
}

// x^(p^k) mod m by repeated Frobenius.
GfPoly frobenius_power(const GfPoly& m, std::uint64_t p, int k) {
  GfPoly x{0, 1};
  rem_monic(x, m, p);
  for (int i = 0; i < k; ++i) x = pow_rem(x, p, m, p);
  return x;
}

// gcd(x^p - x, g) for monic g: the product of the distinct linear factors.
GfPoly linear_part(const GfPoly& g, std::uint64_t p) {
  GfPoly xp = pow_rem(GfPoly{0, 1}, p, g, p);
  xp = sub(std::move(xp), GfPoly{0, 1}, p);
  return gcd(g, std::move(xp), p);
}

std::uint64_t eval(const GfPoly& a, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = add_mod(mul_mod(acc, x, p), *it, p);
  return acc;
}

void quadratic_roots(const GfPoly& h, std::uint64_t p, std::vector<std::uint64_t>& out) {
  // h = a x^2 + b x + c with a != 0, p odd.
  const std::uint64_t a = h[2], b = h[1], c = h[0];
  const std::uint64_t disc = sub_mod(mul_mod(b, b, p), mul_mod(4 % p, mul_mod(a, c, p), p), p);
  const auto s = sqrt_mod(disc, p);
  if (!s) return;
  const std::uint64_t inv2a = inv_mod(mul_mod(2, a, p), p);
  const std::uint64_t neg_b = sub_mod(0, b, p);
  out.push_back(mul_mod(add_mod(neg_b, *s, p), inv2a, p));
  if (*s != 0) out.push_back(mul_mod(sub_mod(neg_b, *s, p), inv2a, p));
}

// Roots of a monic squarefree h that splits into distinct linear factors
// (Cantor-Zassenhaus equal-degree splitting), p odd.
void split_linear(const GfPoly& h, std::uint64_t p, std::mt19937_64& rng,
                  std::vector<std::uint64_t>& out) {
  const int d = deg(h);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(sub_mod(0, h[0], p));
    return;
  }
  if (d == 2) {
    quadratic_roots(h, p, out);
    return;
  }
  std::uniform_int_distribution<std::uint64_t> pick(0, p - 1);
  for (;;) {
    const GfPoly shifted{pick(rng), 1};
    GfPoly t = pow_rem(shifted, (p - 1) / 2, h, p);
    t = sub(std::move(t), GfPoly{1}, p);
    GfPoly g = gcd(h, std::move(t), p);
    if (deg(g) > 0 && deg(g) < d) {
      split_linear(g, p, rng, out);
      split_linear(div_monic(h, g, p), p, rng, out);
      return;
    }
  }
}

// Jacobi symbol (a|n) for odd n.
int jacobi(std::uint64_t a, std::uint64_t n) {
  int result = 1;
  a %= n;
  while (a != 0) {
    const int z = std::countr_zero(a);
    a >>= z;
    if ((z & 1) && ((n & 7) == 3 || (n & 7) == 5)) result = -result;
    if ((a & n & 2) != 0) result = -result;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? result : 0;
}

void require_prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw Error(ErrorCode::not_prime, std::to_string(p) + " is not prime");
}

std::vector<std::uint64_t> scan_roots(const GfPoly& g, std::uint64_t p) {
  std::vector<std::uint64_t> roots;
  for (std::uint64_t r = 0; r < p; ++r) {
    if (eval(g, r, p) == 0) roots.push_back(r);
  }
  return roots;
}

}  // namespace

std::uint64_t residue(std::int64_t v, std::uint64_t p) noexcept {
  const i128 r = static_cast<i128>(v) % static_cast<i128>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<i128>(p) : r);
}

int kronecker(std::int64_t a, std::int64_t m) noexcept {
  if (m == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (m & 1) == 0) return 0;

  std::uint64_t mm = m < 0 ? static_cast<std::uint64_t>(-(m + 1)) + 1 : static_cast<std::uint64_t>(m);
  int result = 1;
  const int v = std::countr_zero(mm);
  mm >>= v;
  if (v & 1) {
    // (a|2) = +1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
    const auto r = static_cast<unsigned>(a & 7);
    if (r == 3 || r == 5) result = -result;
  }
  if (m < 0 && a < 0) result = -result;

  return result * jacobi(residue(a, mm), mm);
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0 || p == 2) return a;
  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);

  std::uint64_t q = p - 1;
  const int s = std::countr_zero(q);
  q >>= s;
  std::uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;

  int m = s;
  std::uint64_t c = pow_mod(z, q, p);
  std::uint64_t t = pow_mod(a, q, p);
  std::uint64_t r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    int i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

RootSet count_roots(const Polynomial& f, std::uint64_t p) { return count_roots(f.coeffs(), p); }

RootSet count_roots(std::span<const std::int64_t> coeffs, std::uint64_t p) {
  require_prime(p);
  RootSet out;
  out.p = p;
  GfPoly g = reduce(coeffs, p);
  if (g.empty()) {
    out.omega = p;
    if (p <= kCountRootsListBound) {
      out.roots.resize(p);
      for (std::uint64_t r = 0; r < p; ++r) out.roots[r] = r;
      out.roots_listed = true;
    }
    return out;
  }
  if (deg(g) == 0) {
    out.roots_listed = true;
    return out;
  }
  if (p <= kCountRootsListBound) {
    out.roots = scan_roots(g, p);
    out.omega = out.roots.size();
    out.roots_listed = true;
    return out;
  }
  if (coeffs.size() == 3 && deg(g) == 2) {
    // p is odd here; p does not divide a (degree preserved) or 2.
    const std::uint64_t a = g[2], b = g[1], c = g[0];
    const std::uint64_t disc = sub_mod(mul_mod(b, b, p), mul_mod(4, mul_mod(a, c, p), p), p);
    if (disc != 0) {
      out.omega = static_cast<std::uint64_t>(1 + jacobi(disc, p));
      return out;
    }
  }
  make_monic(g, p);
  out.omega = static_cast<std::uint64_t>(deg(linear_part(g, p)));
  return out;
}

RootSet list_roots(const Polynomial& f, std::uint64_t p) { return list_roots(f.coeffs(), p); }

RootSet list_roots(std::span<const std::int64_t> coeffs, std::uint64_t p) {
  require_prime(p);
  RootSet out;
  out.p = p;
  out.roots_listed = true;
  GfPoly g = reduce(coeffs, p);
  if (g.empty()) {
    throw Error(ErrorCode::identically_zero,
                "polynomial vanishes identically mod " + std::to_string(p));
  }
  if (deg(g) == 0) return out;
  if (p <= kBruteForceRootBound) {
    out.roots = scan_roots(g, p);
  } else {
    make_monic(g, p);
    if (deg(g) == 1) {
      out.roots.push_back(sub_mod(0, g[0], p));
    } else if (deg(g) == 2) {
      quadratic_roots(g, p, out.roots);
    } else {
      const GfPoly h = linear_part(g, p);
      std::mt19937_64 rng(p);
      split_linear(h, p, rng, out.roots);
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  }
  out.omega = out.roots.size();
  return out;
}

bool is_irreducible_mod_p(std::span<const std::int64_t> coeffs, std::uint64_t p) {
  GfPoly f = reduce(coeffs, p);
  const int d = deg(f);
  if (d < 1 || d != static_cast<int>(coeffs.size()) - 1) return false;
  if (d == 1) return true;
  make_monic(f, p);
  const GfPoly x{0, 1};
  GfPoly full = frobenius_power(f, p, d);
  GfPoly x_red = x;
  rem_monic(x_red, f, p);
  if (sub(full, x_red, p) != GfPoly{}) return false;
  for (const auto& [q, mult] : factorize(static_cast<std::uint64_t>(d))) {
    (void)mult;
    GfPoly partial = frobenius_power(f, p, d / static_cast<int>(q));
    if (deg(gcd(f, sub(std::move(partial), x_red, p), p)) != 0) return false;
  }
  return true;
}

}  // namespace bh
