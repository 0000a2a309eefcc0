#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catoni/distributions.hpp"
#include "catoni/erm.hpp"
#include "catoni/influence.hpp"
#include "catoni/parallel.hpp"

namespace catoni {

enum class ExperimentKind { tail, uniform, erm, bounds_table };
enum class EstimatorKind { empirical, catoni, mom };
enum class OutputFormat { csv, json };

std::string_view to_string(ExperimentKind kind);
std::string_view to_string(EstimatorKind kind);
std::string_view to_string(OutputFormat format);
ExperimentKind experiment_from_string(std::string_view name);
EstimatorKind estimator_from_string(std::string_view name);
OutputFormat format_from_string(std::string_view name);

/// Parses a comma-separated estimator list such as "empirical,catoni".
std::vector<EstimatorKind> parse_estimator_list(std::string_view text);

/// Linear-regression ERM setup: 1-D Gaussian features, slope grid g_a(z) = a z.
struct ErmSettings {
  double grid_lo = -2.45;
  double grid_hi = 2.45;
  double truth_slope = 1.02;
  DistributionSpec noise{Family::student_t, 4.5, 1.0, 0.0};
  LossKind loss = LossKind::squared;
  std::size_t oracle_n = 1'000'000;  ///< Monte Carlo oracle draws when no closed form
  std::size_t pilot_n = 200'000;     ///< draws for the loss-variance pilot run
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::tail;
  DistributionSpec dist{Family::gaussian, 1.0, 1.0, 0.0};
  std::size_t n = 500;
  double delta = 0.01;
  std::size_t replications = 1000;
  std::uint64_t base_seed = 1;
  InfluenceKind influence = InfluenceKind::widest;
  std::vector<EstimatorKind> estimators{EstimatorKind::empirical, EstimatorKind::catoni,
                                        EstimatorKind::mom};
  std::size_t class_size = 1;
  double shift_spacing = 1.0;  ///< uniform: member j is x + j * shift_spacing
  std::optional<double> sigma2;  ///< variance bound; defaults to the true variance
  std::optional<double> alpha;   ///< fixed alpha; defaults to the derived choice
  std::optional<std::size_t> mom_blocks;
  std::optional<std::vector<double>> x_grid;  ///< tail/bounds; default grid when unset
  ErmSettings erm;
  OutputFormat format = OutputFormat::csv;
  std::string output;  ///< empty or "-" writes to standard output
  Execution execution;
};

/// Checks every precondition the selected experiment relies on.
/// Throws ValidityError / InputError.
void validate(const ExperimentConfig& config);

/// Ten x values, 1.5 x0 ... 6 x0, where x0 solves catoni_tail_bound(n, sigma2, x0) = 1.
std::vector<double> default_x_grid(std::size_t n, double sigma2);

/// Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile(std::vector<double> values, double q);

struct TailRow {
  double x = 0.0;
  EstimatorKind estimator = EstimatorKind::catoni;
  double exceedance = 0.0;
  double std_error = 0.0;
  double envelope = 0.0;
};

struct CoverageRow {
  EstimatorKind estimator = EstimatorKind::catoni;
  double width = 0.0;
  double exceedance = 0.0;
  double std_error = 0.0;
  double target = 0.0;  ///< 2 delta
};

struct ErrorQuantiles {
  EstimatorKind estimator = EstimatorKind::catoni;
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
};

struct TailReport {
  std::string dist;
  std::size_t n = 0;
  double delta = 0.0;
  double sigma2 = 0.0;
  double true_mean = 0.0;
  std::size_t replications = 0;
  std::string influence;
  double alpha = 0.0;
  std::size_t mom_blocks = 0;
  std::vector<TailRow> rows;
  std::vector<CoverageRow> coverage;
  std::vector<ErrorQuantiles> quantiles;
};

struct UniformReport {
  std::string dist;
  std::size_t n = 0;
  double delta = 0.0;
  double sigma2 = 0.0;
  std::size_t class_size = 0;
  double shift_spacing = 0.0;
  std::size_t replications = 0;
  std::string influence;
  double alpha = 0.0;
  double width = 0.0;
  double exceedance = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  double sup_deviation_p50 = 0.0;
  double sup_deviation_p99 = 0.0;
};

struct ExcessSummary {
  double median = 0.0;
  double p90 = 0.0;
  double mean = 0.0;
};

struct ErmAggregateReport {
  std::size_t n = 0;
  std::size_t class_size = 0;
  std::size_t replications = 0;
  std::string noise;
  std::string loss;
  std::string influence;
  double sigma2 = 0.0;
  double alpha = 0.0;
  bool closed_form_oracle = false;
  std::vector<double> oracle_risks;
  double m_star = 0.0;
  double bayes_risk = 0.0;  ///< risk of the true regression function
  double grid_floor = 0.0;  ///< m_star - bayes_risk
  ExcessSummary catoni;
  ExcessSummary empirical;
  std::vector<std::size_t> catoni_selected;
  std::vector<std::size_t> empirical_selected;
  std::vector<double> catoni_excess;
  std::vector<double> empirical_excess;
};

struct BoundsRow {
  double x = 0.0;
  double catoni_tail_bound = 0.0;
  double increment_tail_bound = 0.0;
};

struct BoundsTable {
  std::size_t n = 0;
  double sigma2 = 0.0;
  double delta = 0.0;
  std::size_t class_size = 0;
  double catoni_width = 0.0;
  double finite_class_width = 0.0;
  std::vector<BoundsRow> rows;
};

TailReport run_tail_experiment(const ExperimentConfig& config);
UniformReport run_uniform_experiment(const ExperimentConfig& config);
ErmAggregateReport run_erm_experiment(const ExperimentConfig& config);
BoundsTable run_bounds_table(const ExperimentConfig& config);

}  // namespace catoni
