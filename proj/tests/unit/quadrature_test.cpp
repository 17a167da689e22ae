#include "bh/error.hpp"
#include "bh/quadrature.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace bh {
namespace {

PolySystem system_of(std::initializer_list<const char*> texts) {
  std::vector<Polynomial> polys;
  for (const char* t : texts) polys.push_back(parse_polynomial(t));
  return build_system(std::move(polys));
}

TEST(AdaptiveSimpson, Polynomials) {
  EXPECT_NEAR(adaptive_simpson([](double t) { return t * t * t; }, 0, 2, 1e-12), 4.0, 1e-12);
  EXPECT_NEAR(adaptive_simpson([](double t) { return std::exp(t); }, 0, 1, 1e-12), std::exp(1.0) - 1, 1e-11);
  EXPECT_EQ(adaptive_simpson([](double) { return 1.0; }, 3, 3, 1e-9), 0.0);
}

TEST(AdaptiveSimpson, ThrowsWhenDepthExhausted) {
  try {
    adaptive_simpson([](double t) { return std::sin(1.0 / t); }, 1e-9, 1, 1e-14, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::tolerance_not_met);
  }
}

TEST(Integrals, LogarithmicIntegralOracle) {
  // li(10^6) - li(2) = 78626.504...; compare with 64-point Gauss-Legendre.
  const oracle::GaussLegendre64 gl;
  const double reference = gl.integrate([](double t) { return 1.0 / std::log(t); }, 2.0, 1e6, 200);
  EXPECT_NEAR(integrate_original(1, 1e6), reference, 1e-9 * reference);
  EXPECT_NEAR(reference, 78626.50390, 1e-4);
}

TEST(Integrals, ModifiedAgainstGaussLegendre) {
  const oracle::GaussLegendre64 gl;
  const PolySystem s = system_of({"n", "2n+1"});
  const double reference = gl.integrate(
      [](double t) { return 1.0 / (std::log(t) * std::log(2 * t + 1)); }, 2.0, 1e6, 400);
  EXPECT_NEAR(integrate_modified(s, 2.0, 1e6, 1e-10), reference, 1e-8 * reference);

  const PolySystem q = system_of({"6n^2+1"});
  const double ref_q = gl.integrate([](double t) { return 1.0 / std::log(6 * t * t + 1); }, 1.0, 1e6, 400);
  EXPECT_NEAR(integrate_modified(q, 1e6), ref_q, 1e-8 * ref_q);
}

TEST(Integrals, Additivity) {
  const PolySystem s = system_of({"n", "2n+1"});
  for (const double mid : {3.7, 99.0, 1234.5, 5e5}) {
    const double whole = integrate_modified(s, 2.0, 1e6, 1e-10);
    const double parts = integrate_modified(s, 2.0, mid, 1e-10) + integrate_modified(s, mid, 1e6, 1e-10);
    EXPECT_NEAR(whole, parts, 1e-9 * std::max(1.0, whole)) << mid;
  }
}

TEST(Integrals, TighterToleranceConverges) {
  const PolySystem s = system_of({"6n^2+1"});
  const double exact = integrate_modified(s, 1e8, 1e-13);
  double previous_err = INFINITY;
  for (const double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
    const double err = std::abs(integrate_modified(s, 1e8, tol) - exact);
    EXPECT_LE(err, tol * exact) << tol;
    EXPECT_LE(err, previous_err * 1.0001 + 1e-12) << tol;
    previous_err = err;
  }
}

TEST(Integrals, LowerBounds) {
  EXPECT_EQ(modified_lower_bound(system_of({"n", "2n+1"})), 2.0);
  EXPECT_EQ(modified_lower_bound(system_of({"6n^2+1"})), 1.0);
  EXPECT_EQ(integrate_modified(system_of({"n", "2n+1"}), 2.0), 0.0);
  EXPECT_EQ(integrate_modified(system_of({"n", "2n+1"}), 1.5), 0.0);
  EXPECT_EQ(integrate_original(1, 2.0), 0.0);
}

TEST(Integrals, SingularIntegrand) {
  try {
    integrate_modified(system_of({"n", "2n+1"}), 1.0, 10.0, 1e-9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::singular_integrand);
  }
  try {
    integrate_original(1, 1.0, 10.0, 1e-9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
  }
}

TEST(Integrals, ModifiedOverOriginalRatioAtTenToTheTen) {
  // Estimates ratio for n, 2n + 1 with the constant cancelling.
  const PolySystem s = system_of({"n", "2n+1"});
  const double ratio = integrate_modified(s, 1e10) / integrate_original(2, 1e10);
  EXPECT_NEAR(ratio, 0.9693, 1e-4);
}

TEST(Predict, SophieGermainRows) {
  const PolySystem s = system_of({"n", "2n+1"});
  const auto constant = bh_constant_naive(s, 1'000'000);
  const std::vector<std::uint64_t> xs{100, 1'000, 10'000, 100'000, 1'000'000, 10'000'000};
  const std::vector<CountResult> actuals{{100, 10}, {1'000, 37}, {10'000, 190},
                                         {100'000, 1171}, {1'000'000, 7746}, {10'000'000, 56032}};
  const auto rows = predict(s, xs, constant, actuals);
  ASSERT_EQ(rows.size(), xs.size());
  const std::vector<double> modified{10, 39, 195, 1166, 7811, 56128};
  const std::vector<double> original{14, 46, 214, 1249, 8248, 58754};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].x, xs[i]);
    EXPECT_EQ(std::llround(rows[i].modified), modified[i]) << xs[i];
    EXPECT_EQ(std::llround(rows[i].original), original[i]) << xs[i];
    ASSERT_TRUE(rows[i].rel_err_modified.has_value());
    EXPECT_NEAR(*rows[i].rel_err_modified, (rows[i].modified - *rows[i].actual) / *rows[i].actual, 1e-15);
  }
  EXPECT_NEAR(rows[0].modified, 10.1987, 1e-4);
}

TEST(Predict, SixNSquaredPlusOneRows) {
  const PolySystem s = system_of({"6n^2+1"});
  const auto constant = bh_constant_accelerated(s.polys.front(), 1'000'000);
  const std::vector<std::uint64_t> xs{100, 1'000, 10'000, 100'000, 1'000'000};
  const auto rows = predict(s, xs, constant);
  const std::vector<double> modified{25, 162, 1195, 9469, 78514};
  const std::vector<double> original{31, 189, 1332, 10299, 84096};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(std::llround(rows[i].modified), modified[i]) << xs[i];
    EXPECT_EQ(std::llround(rows[i].original), original[i]) << xs[i];
    EXPECT_FALSE(rows[i].actual.has_value());
    EXPECT_FALSE(rows[i].rel_err_modified.has_value());
  }
}

}  // namespace
}  // namespace bh
