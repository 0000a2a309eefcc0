#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catoni/rng.hpp"

namespace catoni {

enum class Family { pareto, symmetrized_pareto, student_t, lognormal, gaussian };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

/// A law with closed-form first and second moments.
///
///  - pareto:             scale * U^(-1/shape) + shift
///  - symmetrized_pareto: S * scale * U^(-1/shape) + shift, S = +-1 independent
///  - student_t:          scale * T_shape + shift
///  - lognormal:          scale * exp(shape * Z) + shift
///  - gaussian:           scale * Z + shift (shape is unused but must be positive)
struct DistributionSpec {
  Family family = Family::gaussian;
  double shape = 1.0;
  double scale = 1.0;
  double shift = 0.0;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

/// Throws ValidityError on non-positive shape/scale or non-finite parameters.
void validate(const DistributionSpec& dist);

/// Parses "family:shape:scale:shift"; trailing fields may be omitted.
DistributionSpec parse_distribution(std::string_view text);
std::string format_distribution(const DistributionSpec& dist);

/// Rescales and shifts so the law has mean 0 and variance 1. Requires finite variance.
DistributionSpec standardized(const DistributionSpec& dist);

struct Moments {
  double mean = 0.0;      ///< +inf or NaN when the mean does not exist
  double variance = 0.0;  ///< +inf when the variance does not exist

  bool finite_mean() const noexcept;
  bool finite_variance() const noexcept;
};

Moments true_moments(const DistributionSpec& dist);

/// Fourth central moment when it has a closed form and is finite (symmetric families
/// only); returns a negative value otherwise.
double central_fourth_moment(const DistributionSpec& dist);

/// An i.i.d. sample. Always non-empty and finite.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  operator std::span<const double>() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

Sample sample(const DistributionSpec& dist, RngStream& stream, std::size_t n);

/// Fills `out` with i.i.d. draws. Same sequence as sample() for the same stream state.
void sample_into(const DistributionSpec& dist, RngStream& stream, std::span<double> out);

}  // namespace catoni
