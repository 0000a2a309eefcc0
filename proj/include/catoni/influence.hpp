#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string_view>

namespace catoni {

/// Truncation functions for the M-estimator.
///
/// `narrowest` and `widest` are the two extreme odd functions squeezed between
///   -log(1 - x + x^2/2) <= phi(x) <= log(1 + x + x^2/2).
/// `identity` is phi(x) = x; it does not satisfy the sandwich and turns the
/// estimator back into the empirical mean.
enum class InfluenceKind { identity, narrowest, widest };

std::string_view to_string(InfluenceKind kind);
InfluenceKind influence_from_string(std::string_view name);

namespace detail {

// log(1 + t + t^2/2) for t >= 0, without overflowing t^2 for huge t.
inline double log_quadratic(double t) {
  if (t > 1e100) return 2.0 * std::log(t) - std::numbers::ln2;
  return std::log1p(t + 0.5 * t * t);
}

// log(1 - t + t^2/2) for t >= 0; the argument never drops below 1/2.
inline double log_quadratic_minus(double t) {
  if (t > 1e100) return 2.0 * std::log(t) - std::numbers::ln2;
  return std::log1p(t * (0.5 * t - 1.0));
}

}  // namespace detail

/// Unchecked evaluation used in the estimator's inner loop.
inline double influence(InfluenceKind kind, double x) {
  switch (kind) {
    case InfluenceKind::identity:
      return x;
    case InfluenceKind::widest: {
      const double v = detail::log_quadratic(std::fabs(x));
      return x < 0.0 ? -v : v;
    }
    case InfluenceKind::narrowest: {
      const double ax = std::fabs(x);
      const double v = ax >= 1.0 ? std::numbers::ln2 : -detail::log_quadratic_minus(ax);
      return x < 0.0 ? -v : v;
    }
  }
  return x;
}

/// phi(x) for the given kind. Throws InputError if x is not finite.
double eval_influence(InfluenceKind kind, double x);

struct Envelope {
  double lower;
  double upper;
};

/// The sandwich bounds at x. Always finite for finite x.
Envelope envelopes(double x);

struct InfluenceValidation {
  bool sandwich = true;
  bool monotone = true;
  std::size_t points = 0;
  std::size_t sandwich_violations = 0;
  std::size_t monotone_violations = 0;
  double first_sandwich_violation = 0.0;  ///< grid point, meaningful if !sandwich
  double worst_sandwich_excess = 0.0;     ///< largest distance outside the envelope

  bool passed() const noexcept { return sandwich && monotone; }
};

/// Checks the sandwich and monotonicity at every grid point with slack 1e-12.
/// Throws InputError for an empty or non-finite grid.
InfluenceValidation validate_influence(InfluenceKind kind, std::span<const double> grid);

inline constexpr double kInfluenceTolerance = 1e-12;

}  // namespace catoni
