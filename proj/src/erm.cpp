#include "catoni/erm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

#include "catoni/errors.hpp"

namespace catoni {

namespace {

constexpr std::size_t kOracleChunk = 1 << 16;

double noise_mean(const DistributionSpec& noise) {
  const Moments m = true_moments(noise);
  if (!m.finite_mean()) throw ValidityError("regression noise must have a finite mean");
  return m.mean;
}

void require_model_matches(const FunctionClass& cls, const RegressionModel& model) {
  cls.validate();
  if (model.dim() != cls.dim())
    throw InputError("regression model and function class have different feature dimensions");
}

// Fourth-moment finiteness of the noise, which squared-loss variance needs.
bool noise_fourth_moment_finite(const DistributionSpec& noise) {
  switch (noise.family) {
    case Family::gaussian:
    case Family::lognormal:
      return true;
    case Family::student_t:
    case Family::pareto:
    case Family::symmetrized_pareto:
      return noise.shape > 4.0;
  }
  return false;
}

}  // namespace

double LinearPredictor::predict(std::span<const double> z) const {
  double v = intercept;
  for (std::size_t k = 0; k < coefficients.size(); ++k) v += coefficients[k] * z[k];
  return v;
}

std::size_t FunctionClass::dim() const {
  return members.empty() ? 0 : members.front().coefficients.size();
}

void FunctionClass::validate() const {
  if (members.empty()) throw InputError("function class is empty");
  if (descriptors.size() != members.size())
    throw InputError("function class needs one descriptor per member");
  const std::size_t d = dim();
  for (const auto& m : members) {
    if (m.coefficients.size() != d) throw InputError("function class members differ in dimension");
    if (!std::isfinite(m.intercept)) throw InputError("non-finite intercept");
    for (double c : m.coefficients)
      if (!std::isfinite(c)) throw InputError("non-finite coefficient");
  }
}

FunctionClass FunctionClass::slope_grid(double lo, double hi, std::size_t count) {
  if (count < 1) throw InputError("grid needs at least one point");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) throw InputError("bad grid range");
  FunctionClass cls;
  cls.members.reserve(count);
  cls.descriptors.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double a =
        count == 1 ? lo : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(count - 1);
    cls.members.push_back({{a}, 0.0});
    char buf[48];
    std::snprintf(buf, sizeof buf, "a=%.17g", a);
    cls.descriptors.emplace_back(buf);
  }
  return cls;
}

std::string_view to_string(LossKind kind) {
  return kind == LossKind::squared ? "squared" : "absolute";
}

LossKind loss_from_string(std::string_view name) {
  if (name == "squared") return LossKind::squared;
  if (name == "absolute") return LossKind::absolute;
  throw InputError("unknown loss '" + std::string(name) + "'");
}

LossMatrix::LossMatrix(std::size_t members, std::size_t observations)
    : members_(members), observations_(observations), data_(members * observations) {}

std::span<const double> LossMatrix::row(std::size_t j) const {
  return std::span<const double>(data_).subspan(j * observations_, observations_);
}

std::span<double> LossMatrix::row(std::size_t j) {
  return std::span<double>(data_).subspan(j * observations_, observations_);
}

void LossMatrix::shift(double c) {
  for (double& v : data_) v += c;
}

Dataset draw_dataset(const RegressionModel& model, RngStream& stream, std::size_t n) {
  if (n == 0) throw InputError("dataset size must be at least 1");
  const double center = noise_mean(model.noise);
  Dataset data;
  data.features.dim = model.dim();
  data.features.values.resize(n * model.dim());
  std::normal_distribution<double> z;
  for (double& v : data.features.values) v = z(stream);

  data.targets.resize(n);
  sample_into(model.noise, stream, data.targets);
  for (std::size_t i = 0; i < n; ++i)
    data.targets[i] += model.truth.predict(data.features.row(i)) - center;
  return data;
}

LossMatrix loss_matrix(const FunctionClass& cls, const Features& features,
                       std::span<const double> targets, LossKind loss) {
  cls.validate();
  if (features.rows() != targets.size())
    throw InputError("features and targets have different lengths");
  if (targets.empty()) throw InputError("no observations");
  if (features.dim != cls.dim()) throw InputError("feature dimension does not match the class");

  LossMatrix out(cls.size(), targets.size());
  for (std::size_t j = 0; j < cls.size(); ++j) {
    auto row = out.row(j);
    for (std::size_t i = 0; i < targets.size(); ++i)
      row[i] = evaluate_loss(loss, cls.members[j].predict(features.row(i)), targets[i]);
  }
  return out;
}

std::vector<double> catoni_risk_per_function(const LossMatrix& losses, const CatoniConfig& config,
                                             const Execution& exec) {
  std::vector<double> risks(losses.members());
  kernels::for_each_index(losses.members(), exec, [&](std::size_t j) {
    risks[j] = catoni_estimate(losses.row(j), config).value;
  });
  return risks;
}

std::vector<double> empirical_risk_per_function(const LossMatrix& losses) {
  std::vector<double> risks(losses.members());
  for (std::size_t j = 0; j < risks.size(); ++j) risks[j] = empirical_mean(losses.row(j));
  return risks;
}

std::size_t select_minimizer(std::span<const double> risks) {
  if (risks.empty()) throw InputError("cannot select from an empty risk vector");
  // min_element returns the first of equal minima.
  return static_cast<std::size_t>(std::min_element(risks.begin(), risks.end()) - risks.begin());
}

std::vector<double> closed_form_squared_risk(const FunctionClass& cls,
                                             const RegressionModel& model) {
  require_model_matches(cls, model);
  const Moments m = true_moments(model.noise);
  if (!m.finite_variance()) throw ValidityError("noise variance is infinite");
  std::vector<double> risks(cls.size());
  for (std::size_t j = 0; j < cls.size(); ++j) {
    const auto& g = cls.members[j];
    double bias2 = (g.intercept - model.truth.intercept) * (g.intercept - model.truth.intercept);
    for (std::size_t k = 0; k < g.coefficients.size(); ++k) {
      const double d = g.coefficients[k] - model.truth.coefficients[k];
      bias2 += d * d;
    }
    risks[j] = bias2 + m.variance;
  }
  return risks;
}

OracleRisks oracle_risk_monte_carlo(const FunctionClass& cls, const RegressionModel& model,
                                    LossKind loss, std::size_t oracle_n, RngStream& stream) {
  require_model_matches(cls, model);
  if (oracle_n < 2) throw InputError("oracle_n must be at least 2");
  const std::size_t members = cls.size();
  std::vector<double> sum(members, 0.0), sum_sq(members, 0.0);
  for (std::size_t done = 0; done < oracle_n;) {
    const std::size_t chunk = std::min(kOracleChunk, oracle_n - done);
    const Dataset data = draw_dataset(model, stream, chunk);
    for (std::size_t j = 0; j < members; ++j) {
      double s = 0.0, s2 = 0.0;
      for (std::size_t i = 0; i < chunk; ++i) {
        const double l = evaluate_loss(loss, cls.members[j].predict(data.features.row(i)),
                                       data.targets[i]);
        s += l;
        s2 += l * l;
      }
      sum[j] += s;
      sum_sq[j] += s2;
    }
    done += chunk;
  }

  OracleRisks out;
  out.risks.resize(members);
  out.standard_errors.resize(members);
  const double nn = static_cast<double>(oracle_n);
  for (std::size_t j = 0; j < members; ++j) {
    const double mean = sum[j] / nn;
    const double var = std::max(0.0, (sum_sq[j] - nn * mean * mean) / (nn - 1.0));
    out.risks[j] = mean;
    out.standard_errors[j] = std::sqrt(var / nn);
  }
  return out;
}

OracleRisks oracle_risk(const FunctionClass& cls, const RegressionModel& model, LossKind loss,
                        std::size_t oracle_n, RngStream& stream) {
  require_model_matches(cls, model);
  const Moments m = true_moments(model.noise);
  const bool infinite = loss == LossKind::squared ? !m.finite_variance() : !m.finite_mean();
  if (infinite) {
    OracleRisks out;
    out.infinite = true;
    out.risks.assign(cls.size(), std::numeric_limits<double>::infinity());
    out.standard_errors.assign(cls.size(), 0.0);
    return out;
  }
  if (loss == LossKind::squared) {
    OracleRisks out;
    out.closed_form = true;
    out.risks = closed_form_squared_risk(cls, model);
    out.standard_errors.assign(cls.size(), 0.0);
    return out;
  }
  return oracle_risk_monte_carlo(cls, model, loss, oracle_n, stream);
}

bool loss_variance_finite(const RegressionModel& model, LossKind loss) {
  if (loss == LossKind::squared) return noise_fourth_moment_finite(model.noise);
  return true_moments(model.noise).finite_variance();
}

double loss_variance_bound(const FunctionClass& cls, const RegressionModel& model, LossKind loss,
                           std::size_t pilot_n, RngStream& pilot) {
  require_model_matches(cls, model);
  if (!loss_variance_finite(model, loss))
    throw ValidityError("loss has infinite variance under this noise law (" +
                        format_distribution(model.noise) + ")");

  const double m4 = central_fourth_moment(model.noise);
  if (loss == LossKind::squared && m4 >= 0.0) {
    // Loss = (u + e)^2 with u ~ N(beta, s2) independent of symmetric noise e.
    const double v = true_moments(model.noise).variance;
    double sup = 0.0;
    for (const auto& g : cls.members) {
      const double beta = model.truth.intercept - g.intercept;
      double s2 = 0.0;
      for (std::size_t k = 0; k < g.coefficients.size(); ++k) {
        const double d = model.truth.coefficients[k] - g.coefficients[k];
        s2 += d * d;
      }
      const double b2 = beta * beta;
      const double u4 = b2 * b2 + 6.0 * b2 * s2 + 3.0 * s2 * s2;
      const double second = s2 + b2 + v;
      const double fourth = u4 + 6.0 * (s2 + b2) * v + m4;
      sup = std::max(sup, fourth - second * second);
    }
    return sup;
  }

  const OracleRisks pilot_risks = oracle_risk_monte_carlo(cls, model, loss, pilot_n, pilot);
  double sup = 0.0;
  for (double se : pilot_risks.standard_errors)
    sup = std::max(sup, se * se * static_cast<double>(pilot_n));
  return sup;
}

ErmReport excess_risk(std::span<const double> catoni_risks, std::span<const double> empirical_risks,
                      std::span<const double> oracle_risks) {
  if (oracle_risks.empty()) throw InputError("oracle risks are empty");
  if (catoni_risks.size() != oracle_risks.size() || empirical_risks.size() != oracle_risks.size())
    throw InputError("risk vectors must cover the same class");
  ErmReport report;
  report.catoni_risks.assign(catoni_risks.begin(), catoni_risks.end());
  report.oracle_risks.assign(oracle_risks.begin(), oracle_risks.end());
  report.m_star = *std::min_element(oracle_risks.begin(), oracle_risks.end());
  report.selected_index = select_minimizer(catoni_risks);
  report.excess_risk = oracle_risks[report.selected_index] - report.m_star;
  report.empirical_selected_index = select_minimizer(empirical_risks);
  report.comparison_excess_risk_empirical_mean =
      oracle_risks[report.empirical_selected_index] - report.m_star;
  return report;
}

}  // namespace catoni
