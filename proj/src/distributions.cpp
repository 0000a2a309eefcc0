#include "catoni/distributions.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "catoni/errors.hpp"
#include "catoni/parse.hpp"

namespace catoni {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct FamilyName {
  Family family;
  std::string_view name;
};

constexpr std::array<FamilyName, 5> kFamilyNames{{
    {Family::pareto, "pareto"},
    {Family::symmetrized_pareto, "symmetrized_pareto"},
    {Family::student_t, "student_t"},
    {Family::lognormal, "lognormal"},
    {Family::gaussian, "gaussian"},
}};

double pareto_draw(double shape, double scale, RngStream& stream) {
  return scale * std::pow(stream.uniform_open(), -1.0 / shape);
}

}  // namespace

std::string_view to_string(Family family) {
  for (const auto& entry : kFamilyNames)
    if (entry.family == family) return entry.name;
  return "unknown";
}

Family family_from_string(std::string_view name) {
  for (const auto& entry : kFamilyNames)
    if (entry.name == name) return entry.family;
  throw InputError("unknown distribution family '" + std::string(name) + "'");
}

void validate(const DistributionSpec& dist) {
  if (!std::isfinite(dist.shape) || dist.shape <= 0.0)
    throw ValidityError("distribution shape must be positive and finite");
  if (!std::isfinite(dist.scale) || dist.scale <= 0.0)
    throw ValidityError("distribution scale must be positive and finite");
  if (!std::isfinite(dist.shift)) throw ValidityError("distribution shift must be finite");
}

DistributionSpec parse_distribution(std::string_view text) {
  std::array<std::string_view, 4> fields{};
  std::size_t count = 0;
  while (true) {
    const auto colon = text.find(':');
    if (count == fields.size()) throw InputError("too many fields in distribution spec");
    fields[count++] = text.substr(0, colon);
    if (colon == std::string_view::npos) break;
    text.remove_prefix(colon + 1);
  }

  DistributionSpec dist;
  dist.family = family_from_string(trim(fields[0]));
  double* targets[] = {&dist.shape, &dist.scale, &dist.shift};
  for (std::size_t i = 1; i < count; ++i) {
    const auto value = parse_real(fields[i]);
    if (!value) throw InputError("bad number '" + std::string(fields[i]) + "' in distribution spec");
    *targets[i - 1] = *value;
  }
  validate(dist);
  return dist;
}

std::string format_distribution(const DistributionSpec& dist) {
  auto num = [](double v) {
    std::array<char, 32> buf{};
    const int len = std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return std::string(buf.data(), static_cast<std::size_t>(len));
  };
  return std::string(to_string(dist.family)) + ":" + num(dist.shape) + ":" + num(dist.scale) +
         ":" + num(dist.shift);
}

bool Moments::finite_mean() const noexcept { return std::isfinite(mean); }
bool Moments::finite_variance() const noexcept { return std::isfinite(variance); }

Moments true_moments(const DistributionSpec& dist) {
  validate(dist);
  const double a = dist.shape;
  const double s = dist.scale;
  const double s2 = s * s;
  switch (dist.family) {
    case Family::pareto:
      return {a > 1.0 ? a * s / (a - 1.0) + dist.shift : kInf,
              a > 2.0 ? a * s2 / ((a - 1.0) * (a - 1.0) * (a - 2.0)) : kInf};
    case Family::symmetrized_pareto:
      return {a > 1.0 ? dist.shift : kNaN, a > 2.0 ? a * s2 / (a - 2.0) : kInf};
    case Family::student_t:
      return {a > 1.0 ? dist.shift : kNaN, a > 2.0 ? a / (a - 2.0) * s2 : kInf};
    case Family::lognormal: {
      const double w = std::exp(a * a);
      return {s * std::sqrt(w) + dist.shift, s2 * (w - 1.0) * w};
    }
    case Family::gaussian:
      return {dist.shift, s2};
  }
  return {kNaN, kInf};
}

double central_fourth_moment(const DistributionSpec& dist) {
  validate(dist);
  const double a = dist.shape;
  const double s4 = std::pow(dist.scale, 4);
  switch (dist.family) {
    case Family::gaussian:
      return 3.0 * s4;
    case Family::student_t:
      return a > 4.0 ? 3.0 * a * a * s4 / ((a - 2.0) * (a - 4.0)) : -1.0;
    case Family::symmetrized_pareto:
      return a > 4.0 ? a * s4 / (a - 4.0) : -1.0;
    case Family::pareto:
    case Family::lognormal:
      break;
  }
  return -1.0;
}

DistributionSpec standardized(const DistributionSpec& dist) {
  const Moments m = true_moments(dist);
  if (!m.finite_mean() || !m.finite_variance())
    throw ValidityError("cannot standardize a law without finite variance");
  const double sd = std::sqrt(m.variance);
  DistributionSpec out = dist;
  out.scale = dist.scale / sd;
  out.shift = (dist.shift - m.mean) / sd;
  return out;
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("sample must contain at least one value");
  for (double v : values_)
    if (!std::isfinite(v)) throw InputError("sample values must be finite");
}

void sample_into(const DistributionSpec& dist, RngStream& stream, std::span<double> out) {
  validate(dist);
  switch (dist.family) {
    case Family::pareto:
      for (double& x : out) x = pareto_draw(dist.shape, dist.scale, stream) + dist.shift;
      break;
    case Family::symmetrized_pareto:
      for (double& x : out) {
        const double sign = (stream() >> 63) != 0 ? -1.0 : 1.0;
        x = sign * pareto_draw(dist.shape, dist.scale, stream) + dist.shift;
      }
      break;
    case Family::student_t: {
      std::student_t_distribution<double> t(dist.shape);
      for (double& x : out) x = dist.scale * t(stream) + dist.shift;
      break;
    }
    case Family::lognormal: {
      std::normal_distribution<double> z;
      for (double& x : out) x = dist.scale * std::exp(dist.shape * z(stream)) + dist.shift;
      break;
    }
    case Family::gaussian: {
      std::normal_distribution<double> z;
      for (double& x : out) x = dist.scale * z(stream) + dist.shift;
      break;
    }
  }
  for (double x : out)
    if (!std::isfinite(x)) throw ValidityError("distribution produced a non-finite draw");
}

Sample sample(const DistributionSpec& dist, RngStream& stream, std::size_t n) {
  if (n == 0) throw InputError("sample size must be at least 1");
  std::vector<double> values(n);
  sample_into(dist, stream, values);
  return Sample(std::move(values));
}

}  // namespace catoni
