#include "catoni/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "catoni/errors.hpp"

namespace catoni {

namespace {

void require_nonempty(std::span<const double> sample) {
  if (sample.empty()) throw InputError("sample is empty");
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidityError("delta must lie in (0, 1)");
}

}  // namespace

double CatoniConfig::resolve_alpha(std::size_t n) const {
  if (!(tolerance > 0.0)) throw ValidityError("tolerance must be positive");
  if (max_iterations < 1) throw ValidityError("max_iterations must be at least 1");
  if (const double* fixed = std::get_if<double>(&alpha)) {
    if (!(*fixed > 0.0) || !std::isfinite(*fixed)) throw ValidityError("alpha must be positive");
    return *fixed;
  }
  const auto& derived = std::get<DerivedAlpha>(alpha);
  return default_alpha(n, derived.sigma2, derived.delta);
}

double empirical_mean(std::span<const double> sample) {
  require_nonempty(sample);
  return std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(sample.size());
}

double catoni_r_hat(std::span<const double> sample, double alpha, double mu, InfluenceKind kind) {
  require_nonempty(sample);
  if (!(alpha > 0.0)) throw ValidityError("alpha must be positive");
  double sum = 0.0;
  for (double x : sample) sum += influence(kind, alpha * (x - mu));
  return sum / (static_cast<double>(sample.size()) * alpha);
}

double default_alpha(std::size_t n, double sigma2, double delta) {
  require_delta(delta);
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw ValidityError("sigma2 must be positive");
  const double two_log = 2.0 * std::log(1.0 / delta);
  const double nn = static_cast<double>(n);
  if (!(nn > two_log))
    throw ValidityError("need n > 2 log(1/delta) (n=" + std::to_string(n) +
                        ", 2 log(1/delta)=" + std::to_string(two_log) + ")");
  return std::sqrt(two_log / (nn * sigma2 * (1.0 + two_log / (nn - two_log))));
}

EstimateResult catoni_estimate(std::span<const double> sample, const CatoniConfig& config) {
  require_nonempty(sample);
  const double alpha = config.resolve_alpha(sample.size());
  const InfluenceKind kind = config.influence;
  const auto [min_it, max_it] = std::minmax_element(sample.begin(), sample.end());
  double lo = *min_it - 1.0;
  double hi = *max_it + 1.0;

  // The 1/(n alpha) factor does not change the sign, so only the raw sum is needed.
  auto r_sign_sum = [&](double mu) {
    double sum = 0.0;
    for (double x : sample) sum += influence(kind, alpha * (x - mu));
    return sum;
  };

  int iterations = 0;
  while (hi - lo > config.tolerance) {
    if (iterations == config.max_iterations)
      throw ConvergenceError("bisection hit max_iterations", lo, hi, iterations);
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi)
      throw ConvergenceError("bracket cannot shrink below tolerance at this magnitude", lo, hi,
                             iterations);
    ++iterations;
    const double r = r_sign_sum(mid);
    if (r > 0.0) {
      lo = mid;
    } else if (r < 0.0) {
      hi = mid;
    } else {
      lo = hi = mid;
    }
  }
  return {lo + 0.5 * (hi - lo), iterations, hi - lo, alpha};
}

double mom_estimate(std::span<const double> sample, std::size_t k_blocks) {
  require_nonempty(sample);
  if (k_blocks < 1 || k_blocks > sample.size())
    throw InputError("k_blocks must lie in [1, n]");
  const std::size_t block = sample.size() / k_blocks;
  std::vector<double> means(k_blocks);
  for (std::size_t b = 0; b < k_blocks; ++b) {
    const auto first = sample.begin() + static_cast<std::ptrdiff_t>(b * block);
    means[b] = std::accumulate(first, first + static_cast<std::ptrdiff_t>(block), 0.0) /
               static_cast<double>(block);
  }
  std::sort(means.begin(), means.end());
  const std::size_t mid = k_blocks / 2;
  if (k_blocks % 2 == 1) return means[mid];
  return 0.5 * (means[mid - 1] + means[mid]);
}

std::size_t mom_default_blocks(double delta, std::size_t n) {
  require_delta(delta);
  const double k = std::ceil(8.0 * std::log(1.0 / delta));
  const auto blocks = static_cast<std::size_t>(std::max(1.0, k));
  return std::min(n, blocks);
}

}  // namespace catoni
