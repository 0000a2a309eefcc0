#include "catoni/influence.hpp"

#include <algorithm>
#include <string>

#include "catoni/errors.hpp"

namespace catoni {

std::string_view to_string(InfluenceKind kind) {
  switch (kind) {
    case InfluenceKind::identity:
      return "identity";
    case InfluenceKind::narrowest:
      return "narrowest";
    case InfluenceKind::widest:
      return "widest";
  }
  return "unknown";
}

InfluenceKind influence_from_string(std::string_view name) {
  if (name == "identity") return InfluenceKind::identity;
  if (name == "narrowest") return InfluenceKind::narrowest;
  if (name == "widest") return InfluenceKind::widest;
  throw InputError("unknown influence kind '" + std::string(name) + "'");
}

double eval_influence(InfluenceKind kind, double x) {
  if (!std::isfinite(x)) throw InputError("influence argument must be finite");
  return influence(kind, x);
}

Envelope envelopes(double x) {
  // 1 -+ x + x^2/2 >= 1/2, so both logs are finite.
  if (x >= 0.0) return {-detail::log_quadratic_minus(x), detail::log_quadratic(x)};
  return {-detail::log_quadratic(-x), detail::log_quadratic_minus(-x)};
}

InfluenceValidation validate_influence(InfluenceKind kind, std::span<const double> grid) {
  if (grid.empty()) throw InputError("validation grid is empty");
  InfluenceValidation report;
  report.points = grid.size();
  double previous = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double phi = eval_influence(kind, x);
    const auto [lower, upper] = envelopes(x);
    const double excess = std::max(lower - phi, phi - upper);
    if (excess > kInfluenceTolerance) {
      if (report.sandwich) report.first_sandwich_violation = x;
      report.sandwich = false;
      ++report.sandwich_violations;
      report.worst_sandwich_excess = std::max(report.worst_sandwich_excess, excess);
    }
    if (i > 0 && phi < previous - kInfluenceTolerance) {
      report.monotone = false;
      ++report.monotone_violations;
    }
    previous = phi;
  }
  return report;
}

}  // namespace catoni
