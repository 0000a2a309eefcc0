#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "catoni/distributions.hpp"
#include "catoni/estimators.hpp"
#include "catoni/parallel.hpp"
#include "catoni/rng.hpp"

namespace catoni {

/// g(z) = <coefficients, z> + intercept.
struct LinearPredictor {
  std::vector<double> coefficients;
  double intercept = 0.0;

  double predict(std::span<const double> z) const;
};

/// A finite class of linear predictors over features of a common dimension.
struct FunctionClass {
  std::vector<LinearPredictor> members;
  std::vector<std::string> descriptors;

  std::size_t size() const noexcept { return members.size(); }
  std::size_t dim() const;

  /// Throws InputError if empty, dimensions disagree or descriptors are missing.
  void validate() const;

  /// Slopes g_a(z) = a z on `count` evenly spaced points of [lo, hi] (1-D features).
  static FunctionClass slope_grid(double lo, double hi, std::size_t count);
};

enum class LossKind { squared, absolute };

std::string_view to_string(LossKind kind);
LossKind loss_from_string(std::string_view name);

inline double evaluate_loss(LossKind kind, double prediction, double target) {
  const double r = target - prediction;
  return kind == LossKind::squared ? r * r : (r < 0.0 ? -r : r);
}

/// Row-major n x dim feature matrix.
struct Features {
  std::size_t dim = 1;
  std::vector<double> values;

  std::size_t rows() const noexcept { return dim == 0 ? 0 : values.size() / dim; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values).subspan(i * dim, dim);
  }
};

/// Entry (j, i) is the loss of member j on observation i.
class LossMatrix {
 public:
  LossMatrix(std::size_t members, std::size_t observations);

  std::size_t members() const noexcept { return members_; }
  std::size_t observations() const noexcept { return observations_; }
  std::span<const double> row(std::size_t j) const;
  std::span<double> row(std::size_t j);

  /// Adds c to every entry.
  void shift(double c);

 private:
  std::size_t members_;
  std::size_t observations_;
  std::vector<double> data_;
};

/// y = <a*, z> + b* + (noise - E noise), with z ~ N(0, I).
struct RegressionModel {
  LinearPredictor truth;
  DistributionSpec noise;

  std::size_t dim() const noexcept { return truth.coefficients.size(); }
};

struct Dataset {
  Features features;
  std::vector<double> targets;
};

Dataset draw_dataset(const RegressionModel& model, RngStream& stream, std::size_t n);

LossMatrix loss_matrix(const FunctionClass& cls, const Features& features,
                       std::span<const double> targets, LossKind loss);

/// Catoni estimate of each row's mean. Rows may be evaluated concurrently; the
/// result does not depend on the execution policy.
std::vector<double> catoni_risk_per_function(const LossMatrix& losses, const CatoniConfig& config,
                                             const Execution& exec = Execution::serial_reference());

std::vector<double> empirical_risk_per_function(const LossMatrix& losses);

/// Index of the smallest value; ties go to the smallest index.
std::size_t select_minimizer(std::span<const double> risks);

struct OracleRisks {
  std::vector<double> risks;
  std::vector<double> standard_errors;  ///< zero for closed-form entries
  bool closed_form = false;
  bool infinite = false;  ///< the loss has infinite expectation; risks are +inf
};

/// Squared loss: |a - a*|^2 + (b - b*)^2 + Var(noise). Throws ValidityError if the
/// noise variance is infinite.
std::vector<double> closed_form_squared_risk(const FunctionClass& cls, const RegressionModel& model);

/// Monte Carlo risk per member from `oracle_n` fresh draws of `stream`.
OracleRisks oracle_risk_monte_carlo(const FunctionClass& cls, const RegressionModel& model,
                                    LossKind loss, std::size_t oracle_n, RngStream& stream);

/// Closed form when available (squared loss), Monte Carlo otherwise.
OracleRisks oracle_risk(const FunctionClass& cls, const RegressionModel& model, LossKind loss,
                        std::size_t oracle_n, RngStream& stream);

/// True when every member's loss has finite variance under the model.
bool loss_variance_finite(const RegressionModel& model, LossKind loss);

/// sup_j Var(loss of member j). Closed form for squared loss with symmetric noise,
/// otherwise the largest sample variance over `pilot_n` draws of `pilot`.
/// Throws ValidityError if loss_variance_finite() is false.
double loss_variance_bound(const FunctionClass& cls, const RegressionModel& model, LossKind loss,
                           std::size_t pilot_n, RngStream& pilot);

struct ErmReport {
  std::size_t selected_index = 0;
  std::vector<double> catoni_risks;
  std::vector<double> oracle_risks;
  double m_star = 0.0;
  double excess_risk = 0.0;
  std::size_t empirical_selected_index = 0;
  double comparison_excess_risk_empirical_mean = 0.0;
};

/// Selects by Catoni risk and by empirical risk and measures each choice's true
/// excess risk over min(oracle_risks).
ErmReport excess_risk(std::span<const double> catoni_risks, std::span<const double> empirical_risks,
                      std::span<const double> oracle_risks);

}  // namespace catoni
