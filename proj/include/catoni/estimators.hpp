#pragma once

#include <cstddef>
#include <span>
#include <variant>

#include "catoni/influence.hpp"

namespace catoni {

/// Ask for alpha to be derived from a confidence level and a variance bound.
struct DerivedAlpha {
  double delta = 0.05;
  double sigma2 = 1.0;
};

struct CatoniConfig {
  InfluenceKind influence = InfluenceKind::widest;
  std::variant<double, DerivedAlpha> alpha = DerivedAlpha{};
  double tolerance = 1e-10;  ///< final bracket width
  int max_iterations = 200;

  /// The alpha used for a sample of size n; validates the config.
  double resolve_alpha(std::size_t n) const;
};

struct EstimateResult {
  double value = 0.0;
  int iterations = 0;
  double bracket_width = 0.0;
  double alpha_used = 0.0;
};

/// Throws InputError on an empty sample.
double empirical_mean(std::span<const double> sample);

/// (1 / (n alpha)) * sum_i phi(alpha (X_i - mu)). Non-increasing in mu.
double catoni_r_hat(std::span<const double> sample, double alpha, double mu, InfluenceKind kind);

/// sqrt(2 L / (n sigma2 (1 + 2 L / (n - 2 L)))) with L = log(1/delta).
/// Throws ValidityError unless n > 2 log(1/delta).
double default_alpha(std::size_t n, double sigma2, double delta);

/// Root of r_hat located by bisection on [min(X) - 1, max(X) + 1].
///
/// The returned value is the midpoint of the final bracket, so the choice among
/// multiple roots is deterministic. Throws ConvergenceError if the bracket cannot
/// be shrunk to `tolerance` within `max_iterations` halvings.
EstimateResult catoni_estimate(std::span<const double> sample, const CatoniConfig& config);

/// Median of the means of k contiguous blocks of floor(n/k) points; the trailing
/// n mod k points are dropped. Even k averages the two middle block means.
double mom_estimate(std::span<const double> sample, std::size_t k_blocks);

/// min(n, max(1, ceil(8 log(1/delta)))).
std::size_t mom_default_blocks(double delta, std::size_t n);

}  // namespace catoni
