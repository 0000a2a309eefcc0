#include "catoni/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catoni/errors.hpp"

namespace catoni {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidityError(std::string(name) + " must be positive");
}

void require_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InputError("x must be positive and finite");
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// Shared by the single-function and finite-class widths; log_term = log(N/delta).
double width_for_log(std::size_t n, double sigma2, double log_term) {
  const double nn = static_cast<double>(n);
  if (!(nn > 2.0 * log_term))
    throw ValidityError("need n > 2 log(N/delta) (n=" + std::to_string(n) +
                        ", 2 log(N/delta)=" + std::to_string(2.0 * log_term) + ")");
  return std::sqrt(2.0 * sigma2 * log_term / (nn * (1.0 - 2.0 * log_term / nn)));
}

}  // namespace

double catoni_width(std::size_t n, double sigma2, double delta) {
  return finite_class_width(n, sigma2, delta, 1);
}

double catoni_tail_bound(std::size_t n, double sigma2, double x) {
  require_positive(sigma2, "sigma2");
  require_x(x);
  const double x2 = x * x;
  return clamp_probability(2.0 * std::exp(-static_cast<double>(n) * x2 / (2.0 * (sigma2 + x2))));
}

double increment_tail_bound(std::size_t n, double sigma2, double x) {
  require_positive(sigma2, "sigma2");
  require_x(x);
  const double x2 = x * x;
  return clamp_probability(4.0 *
                           std::exp(-static_cast<double>(n) * x2 / (2.0 * (x2 + 4.0 * sigma2))));
}

double finite_class_width(std::size_t n, double sigma2, double delta, std::size_t class_size) {
  require_positive(sigma2, "sigma2");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidityError("delta must lie in (0, 1)");
  if (class_size < 1) throw ValidityError("class size must be at least 1");
  return width_for_log(n, sigma2, std::log(static_cast<double>(class_size) / delta));
}

ConditionReport entropy_condition(std::size_t n, double eps, const EntropyClassParams& params) {
  if (n < 1) throw ValidityError("n must be at least 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ValidityError("eps must lie in (0, 1)");
  require_positive(params.C, "C");
  require_positive(params.M, "M");
  require_positive(params.p, "p");
  require_positive(params.C1, "C1");
  require_positive(params.C2, "C2");

  const double nn = static_cast<double>(n);
  ConditionReport report;
  report.cutoff_a = std::min(nn * nn * eps / params.C2, nn / 4.0);
  const double a = report.cutoff_a;
  report.lhs = std::pow(nn, 1.5) * eps * eps / params.C1;

  const double constant_part = params.C > 1.0 ? std::sqrt(std::log(params.C)) * (nn - a) : 0.0;
  double entropy_part = 0.0;
  if (params.p == 2.0) {
    report.branch = EntropyBranch::p_equals_2;
    entropy_part = std::sqrt(params.M) * std::log(nn / a);
  } else {
    report.branch = EntropyBranch::p_general;
    // n^t - a^t with t = 1 - p/2, written with expm1 so the p -> 2 limit stays accurate.
    const double t = 1.0 - params.p / 2.0;
    const double diff = std::expm1(t * std::log(nn)) - std::expm1(t * std::log(a));
    entropy_part = 2.0 * std::sqrt(params.M) / (2.0 - params.p) * diff;
  }
  report.rhs = std::max(entropy_part + constant_part, std::sqrt(nn));
  report.holds = report.lhs >= report.rhs;
  return report;
}

double uniform_bound(std::size_t n, double eps, double C3, double C4) {
  require_positive(eps, "eps");
  require_positive(C3, "C3");
  require_positive(C4, "C4");
  return clamp_probability(C3 * std::exp(-static_cast<double>(n) * eps * eps / C4));
}

DefaultConstants default_constants(double sigma2) {
  require_positive(sigma2, "sigma2");
  const double c = 16.0 * (sigma2 + 1.0);
  return {c, c, 8.0, c};
}

}  // namespace catoni
