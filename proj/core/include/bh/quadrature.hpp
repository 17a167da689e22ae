#pragma once

#include "bh/constants.hpp"
#include "bh/counting.hpp"
#include "bh/poly.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace bh {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kMaxSimpsonDepth = 60;

/// Adaptive Simpson with Richardson correction. A panel is accepted when
/// its error estimate is within the absolute tolerance (halved per level)
/// or the relative tolerance, whichever is met first. Throws
/// ToleranceNotMet when the depth cap is reached.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = kMaxSimpsonDepth);

/// Lower endpoint of the modified integral: n0 + 1, and never below 1.
double modified_lower_bound(const PolySystem& system) noexcept;

/// Lower endpoint of the original integral.
inline constexpr double kOriginalLowerBound = 2.0;

/// Integral of 1 / prod_i log f_i(t) over [L, x], split at powers of ten.
/// Returns 0 when x <= L. Throws SingularIntegrand if some f_i(t) <= 1.
double integrate_modified(const PolySystem& system, double x, double tol = kDefaultTolerance);
double integrate_modified(const PolySystem& system, double a, double b, double tol);

/// Integral of 1 / (log t)^M over [2, x], split at powers of ten.
double integrate_original(int m, double x, double tol = kDefaultTolerance);
double integrate_original(int m, double a, double b, double tol);
double integrate_original(const PolySystem& system, double x, double tol = kDefaultTolerance);

/// One row of an actual-versus-estimate comparison.
struct PredictionRow {
  std::uint64_t x = 0;
  std::optional<std::uint64_t> actual;
  double modified = 0.0;
  double original = 0.0;
  std::optional<double> rel_err_modified;
  std::optional<double> rel_err_original;
};

/// Both estimates at each checkpoint; integrals are accumulated over
/// consecutive checkpoint intervals. `actuals`, when non-empty, must align
/// with `checkpoints`.
std::vector<PredictionRow> predict(const PolySystem& system, std::span<const std::uint64_t> checkpoints,
                                   const EulerProductResult& constant,
                                   std::span<const CountResult> actuals = {},
                                   double tol = kDefaultTolerance);

}  // namespace bh
