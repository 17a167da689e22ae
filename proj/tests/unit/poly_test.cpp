#include "bh/error.hpp"
#include "bh/modular.hpp"
#include "bh/poly.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

namespace bh {
namespace {

std::vector<std::int64_t> coeffs_of(const Polynomial& f) { return {f.coeffs().begin(), f.coeffs().end()}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected bh::Error";
  return ErrorCode::invalid_argument;
}

TEST(ParsePolynomial, Examples) {
  EXPECT_EQ(coeffs_of(parse_polynomial("2*n+1")), (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(coeffs_of(parse_polynomial("6*n^2+1")), (std::vector<std::int64_t>{1, 0, 6}));
  EXPECT_EQ(coeffs_of(parse_polynomial("(n+1)*(n-1)")), (std::vector<std::int64_t>{-1, 0, 1}));
}

TEST(ParsePolynomial, ImplicitProductsAndLists) {
  EXPECT_EQ(coeffs_of(parse_polynomial("2n + 1")), (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(coeffs_of(parse_polynomial("n(n+1) + 41")), (std::vector<std::int64_t>{41, 1, 1}));
  EXPECT_EQ(coeffs_of(parse_polynomial(" 1, 0, 6 ")), (std::vector<std::int64_t>{1, 0, 6}));
  EXPECT_EQ(coeffs_of(parse_polynomial("-3,+1")), (std::vector<std::int64_t>{-3, 1}));
  EXPECT_EQ(coeffs_of(parse_polynomial("-(1 - n)^3 + 2")), (std::vector<std::int64_t>{1, 3, -3, 1}));
}

TEST(ParsePolynomial, Errors) {
  EXPECT_EQ(code_of([] { parse_polynomial("2*n+"); }), ErrorCode::syntax_error);
  EXPECT_EQ(code_of([] { parse_polynomial("2*x+1"); }), ErrorCode::syntax_error);
  EXPECT_EQ(code_of([] { parse_polynomial("(n+1"); }), ErrorCode::syntax_error);
  EXPECT_EQ(code_of([] { parse_polynomial("n^-1"); }), ErrorCode::syntax_error);
  EXPECT_EQ(code_of([] { parse_polynomial("1,,2"); }), ErrorCode::syntax_error);
  EXPECT_EQ(code_of([] { parse_polynomial("1 - n"); }), ErrorCode::non_positive_lead);
  EXPECT_EQ(code_of([] { parse_polynomial("7"); }), ErrorCode::constant_polynomial);
  EXPECT_EQ(code_of([] { parse_polynomial("n - n + 3"); }), ErrorCode::constant_polynomial);
  EXPECT_EQ(code_of([] { parse_polynomial("99999999999999999999*n"); }), ErrorCode::overflow);
  EXPECT_EQ(code_of([] { parse_polynomial("(3037000500*n)^2"); }), ErrorCode::overflow);
}

TEST(FormatPolynomial, CanonicalForm) {
  EXPECT_EQ(format_polynomial(parse_polynomial("6*n^2+1")), "6*n^2 + 1");
  EXPECT_EQ(format_polynomial(parse_polynomial("n")), "n");
  EXPECT_EQ(format_polynomial(parse_polynomial("n^2-3n+2")), "n^2 - 3*n + 2");
  EXPECT_EQ(format_polynomial(Polynomial({INT64_MIN, 1})), "n - 9223372036854775808");
}

TEST(FormatPolynomial, RoundTripsRandomPolynomials) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Polynomial f(oracle::random_polynomial(rng, 6, 1000));
    EXPECT_EQ(parse_polynomial(format_polynomial(f)), f) << format_polynomial(f);
  }
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(Polynomial({1, 2}), 3), 7);
  EXPECT_EQ(evaluate(Polynomial({1, 0, 6}), 0), 1);
  EXPECT_EQ(to_string(evaluate(Polynomial({1, 0, 6}), 1'000'000'000)), "6000000000000000001");
}

TEST(Evaluate, DetectsOverflow) {
  const Polynomial f({0, 0, 0, INT64_MAX});
  EXPECT_EQ(code_of([&] { evaluate(f, INT64_MAX); }), ErrorCode::overflow);
}

TEST(Evaluate, AgreesWithArbitraryPrecision) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> point(-1'000'000, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    const Polynomial f(oracle::random_polynomial(rng, 4, 50));
    const std::int64_t n = point(rng);
    EXPECT_EQ(to_string(evaluate(f, n)), oracle::evaluate(f.coeffs(), n).str());
  }
}

TEST(Irreducibility, Evidence) {
  EXPECT_EQ(irreducibility_evidence(parse_polynomial("2n+1")), IrreducibilityEvidence::certified);
  EXPECT_EQ(irreducibility_evidence(parse_polynomial("6n^2+1")), IrreducibilityEvidence::certified);
  EXPECT_EQ(irreducibility_evidence(parse_polynomial("n^2-1")), IrreducibilityEvidence::failed);
  EXPECT_EQ(irreducibility_evidence(parse_polynomial("n^3-2")), IrreducibilityEvidence::certified);
  EXPECT_EQ(irreducibility_evidence(parse_polynomial("6n^2+5n+1")), IrreducibilityEvidence::failed);  // (2n+1)(3n+1)
  EXPECT_EQ(irreducibility_evidence(parse_polynomial("n^2+n")), IrreducibilityEvidence::failed);
  // Irreducible mod 3.
  EXPECT_EQ(irreducibility_evidence(parse_polynomial("n^4+n+2")), IrreducibilityEvidence::certified);
  // n^4 + 1 is irreducible over Q but reducible mod every prime.
  EXPECT_EQ(irreducibility_evidence(parse_polynomial("n^4+1")), IrreducibilityEvidence::heuristic);
  // (n^2 + 1)(n^2 + 2): no rational root, no mod-p certificate.
  EXPECT_EQ(irreducibility_evidence(parse_polynomial("(n^2+1)(n^2+2)")), IrreducibilityEvidence::heuristic);
}

TEST(BuildSystem, SophieGermain) {
  const PolySystem s = build_system({parse_polynomial("n"), parse_polynomial("2n+1")});
  EXPECT_EQ(s.size(), 2U);
  EXPECT_TRUE(s.admissible);
  EXPECT_EQ(s.n0, 1);
  EXPECT_EQ(coeffs_of(s.product), (std::vector<std::int64_t>{0, 1, 2}));
  EXPECT_EQ(s.total_degree(), 2);
  EXPECT_EQ(s.degree_product(), 1);
}

TEST(BuildSystem, SixNSquaredPlusOne) {
  const PolySystem s = build_system({parse_polynomial("6n^2+1")});
  EXPECT_TRUE(s.admissible);
  EXPECT_EQ(s.n0, 0);
  EXPECT_EQ(s.evidence.front(), IrreducibilityEvidence::certified);
}

TEST(BuildSystem, InadmissibleWitness) {
  try {
    build_system({parse_polynomial("n"), parse_polynomial("n+1")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::inadmissible);
    EXPECT_EQ(e.witness(), 2U);
  }
  const PolySystem s = analyze_system({parse_polynomial("n"), parse_polynomial("n+1")});
  EXPECT_FALSE(s.admissible);
  EXPECT_EQ(s.witness, 2U);
  // Content 3: vanishes identically mod 3.
  EXPECT_EQ(analyze_system({parse_polynomial("3n+6")}).witness, 3U);
  // n(n+2)(n+4) covers every residue mod 3.
  EXPECT_EQ(analyze_system({parse_polynomial("n"), parse_polynomial("n+2"), parse_polynomial("n+4")}).witness, 3U);
}

TEST(BuildSystem, Errors) {
  EXPECT_EQ(code_of([] { build_system({parse_polynomial("n"), parse_polynomial("n")}); }),
            ErrorCode::duplicate_polynomial);
  EXPECT_EQ(code_of([] { build_system({parse_polynomial("n^2-4")}); }), ErrorCode::irreducibility_failed);
  EXPECT_EQ(code_of([] { build_system({}); }), ErrorCode::invalid_argument);
  EXPECT_EQ(code_of([] {
              build_system({parse_polynomial("4000000000*n+1"), parse_polynomial("4000000000*n+3"),
                            parse_polynomial("4000000000*n+7")});
            }),
            ErrorCode::overflow);
}

TEST(BuildSystem, AdmissibilityMatchesBruteForce) {
  std::mt19937_64 rng(19);
  int admissible = 0, checked = 0;
  for (int i = 0; i < 400; ++i) {
    const auto c = oracle::random_polynomial(rng, 4, 50);
    const Polynomial f(c);
    std::optional<PolySystem> s;
    try {
      s = analyze_system({f});
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::irreducibility_failed);
      continue;
    }
    bool expected = true;
    for (std::uint64_t p = 2; p <= static_cast<std::uint64_t>(f.degree()); ++p) {
      if (!oracle::trial_division_is_prime(p)) continue;
      if (oracle::brute_force_roots(c, p).size() == p) expected = false;
    }
    std::uint64_t g = 0;
    for (const auto v : c) g = std::gcd(g, static_cast<std::uint64_t>(v < 0 ? -v : v));
    if (g > 1) expected = false;
    EXPECT_EQ(s->admissible, expected) << format_polynomial(f);
    admissible += expected;
    ++checked;
  }
  EXPECT_GT(checked, 100);
  EXPECT_GT(admissible, 50);
}

TEST(BuildSystem, N0DefiningProperty) {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    std::vector<Polynomial> polys;
    const int m = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < m; ++j) polys.emplace_back(oracle::random_polynomial(rng, 3, 20));
    std::optional<PolySystem> system;
    try {
      system = analyze_system(polys);
    } catch (const Error&) {
      continue;  // duplicates or reducible draws
    }
    const PolySystem& s = *system;
    std::int64_t bound = 0;
    for (const auto& f : s.polys) bound = std::max(bound, cauchy_bound(f, 1));
    bool hit = false;
    for (const auto& f : s.polys) hit = hit || oracle::evaluate(f.coeffs(), s.n0) <= 1;
    EXPECT_TRUE(hit || s.n0 == -bound);
    for (std::int64_t n = s.n0 + 1; n <= s.n0 + 1000; ++n) {
      for (const auto& f : s.polys) ASSERT_GT(oracle::evaluate(f.coeffs(), n), 1) << format_polynomial(f) << " n=" << n;
    }
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace bh
