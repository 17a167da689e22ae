#include "bh/quadrature.hpp"

#include "bh/error.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <string>

namespace bh {

namespace {

constexpr int kMinSimpsonDepth = 3;

struct Panel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& panel, double eps_abs, double tol_rel,
              int depth, int max_depth) {
  const double lm = 0.5 * (panel.a + panel.m);
  const double rm = 0.5 * (panel.m + panel.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(panel.a, panel.m, panel.fa, flm, panel.fm);
  const double right = simpson(panel.m, panel.b, panel.fm, frm, panel.fb);
  const double sum = left + right;
  const double delta = sum - panel.whole;
  if (depth >= kMinSimpsonDepth &&
      (std::abs(delta) <= 15.0 * eps_abs || std::abs(delta) <= 15.0 * tol_rel * std::abs(sum))) {
    return sum + delta / 15.0;
  }
  if (depth >= max_depth) {
    std::ostringstream msg;
    msg << "adaptive Simpson did not reach tolerance " << tol_rel << " on [" << panel.a << ", " << panel.b
        << "] within depth " << max_depth;
    throw Error(ErrorCode::tolerance_not_met, msg.str());
  }
  const Panel lower{panel.a, lm, panel.m, panel.fa, flm, panel.fm, left};
  const Panel upper{panel.m, rm, panel.b, panel.fm, frm, panel.fb, right};
  return refine(f, lower, 0.5 * eps_abs, tol_rel, depth + 1, max_depth) +
         refine(f, upper, 0.5 * eps_abs, tol_rel, depth + 1, max_depth);
}

// Splits [a, b] at every power of ten strictly inside it.
template <typename Integrate>
double by_decades(double a, double b, Integrate&& integrate) {
  if (!(b > a)) return 0.0;
  double total = 0.0;
  double lo = a;
  for (double edge = 10.0; edge < b; edge *= 10.0) {
    if (edge <= lo) continue;
    total += integrate(lo, edge);
    lo = edge;
  }
  return total + integrate(lo, b);
}

void require_tolerance(double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
  require_tolerance(tol);
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const Panel panel{a, m, b, fa, fm, fb, simpson(a, b, fa, fm, fb)};
  return refine(f, panel, tol, tol, 0, max_depth);
}

double modified_lower_bound(const PolySystem& system) noexcept {
  return static_cast<double>(std::max<std::int64_t>(system.n0 + 1, 1));
}

double integrate_modified(const PolySystem& system, double a, double b, double tol) {
  require_tolerance(tol);
  const auto integrand = [&system](double t) {
    double denom = 1.0;
    for (const auto& f : system.polys) {
      const double v = evaluate_real(f, t);
      if (!(v > 1.0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << format_polynomial(f) << " = " << v << " <= 1 at t = " << t
            << "; the integrand 1/prod log f_i(t) is singular there";
        throw Error(ErrorCode::singular_integrand, msg.str());
      }
      denom *= std::log(v);
    }
    const double value = 1.0 / denom;
    assert(value > 0.0);
    return value;
  };
  return by_decades(a, b, [&](double lo, double hi) { return adaptive_simpson(integrand, lo, hi, tol); });
}

double integrate_modified(const PolySystem& system, double x, double tol) {
  const double lower = modified_lower_bound(system);
  if (!(x > lower)) return 0.0;
  return integrate_modified(system, lower, x, tol);
}

double integrate_original(int m, double a, double b, double tol) {
  require_tolerance(tol);
  if (m < 1) throw Error(ErrorCode::invalid_argument, "number of polynomials must be positive");
  if (a < kOriginalLowerBound) {
    throw Error(ErrorCode::invalid_argument, "original integral starts at t = 2");
  }
  const auto integrand = [m](double t) { return std::pow(std::log(t), -m); };
  return by_decades(a, b, [&](double lo, double hi) { return adaptive_simpson(integrand, lo, hi, tol); });
}

double integrate_original(int m, double x, double tol) {
  if (!(x > kOriginalLowerBound)) return 0.0;
  return integrate_original(m, kOriginalLowerBound, x, tol);
}

double integrate_original(const PolySystem& system, double x, double tol) {
  return integrate_original(static_cast<int>(system.size()), x, tol);
}

std::vector<PredictionRow> predict(const PolySystem& system, std::span<const std::uint64_t> checkpoints,
                                   const EulerProductResult& constant, std::span<const CountResult> actuals,
                                   double tol) {
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw Error(ErrorCode::invalid_argument, "checkpoints must be ascending");
  }
  if (!actuals.empty() && actuals.size() != checkpoints.size()) {
    throw Error(ErrorCode::invalid_argument, "actual counts must align with the checkpoints");
  }
  const int m = static_cast<int>(system.size());
  const double original_scale = constant.value / static_cast<double>(system.degree_product());

  std::vector<PredictionRow> rows;
  rows.reserve(checkpoints.size());
  double modified_from = modified_lower_bound(system);
  double original_from = kOriginalLowerBound;
  double modified_acc = 0.0;
  double original_acc = 0.0;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const double x = static_cast<double>(checkpoints[i]);
    if (x > modified_from) {
      modified_acc += integrate_modified(system, modified_from, x, tol);
      modified_from = x;
    }
    if (x > original_from) {
      original_acc += integrate_original(m, original_from, x, tol);
      original_from = x;
    }
    PredictionRow row;
    row.x = checkpoints[i];
    row.modified = constant.value * modified_acc;
    row.original = original_scale * original_acc;
    if (!actuals.empty()) {
      const double actual = static_cast<double>(actuals[i].count);
      row.actual = actuals[i].count;
      row.rel_err_modified = (row.modified - actual) / actual;
      row.rel_err_original = (row.original - actual) / actual;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bh
