#include "catoni/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "catoni/bounds.hpp"
#include "catoni/errors.hpp"
#include "catoni/estimators.hpp"
#include "catoni/parse.hpp"

namespace catoni {

namespace {

template <class Enum, std::size_t N>
using NameTable = std::array<std::pair<Enum, std::string_view>, N>;

constexpr NameTable<ExperimentKind, 4> kExperimentNames{{{ExperimentKind::tail, "tail"},
                                                         {ExperimentKind::uniform, "uniform"},
                                                         {ExperimentKind::erm, "erm"},
                                                         {ExperimentKind::bounds_table, "bounds"}}};
constexpr NameTable<EstimatorKind, 3> kEstimatorNames{{{EstimatorKind::empirical, "empirical"},
                                                       {EstimatorKind::catoni, "catoni"},
                                                       {EstimatorKind::mom, "mom"}}};
constexpr NameTable<OutputFormat, 2> kFormatNames{
    {{OutputFormat::csv, "csv"}, {OutputFormat::json, "json"}}};

template <class Enum, std::size_t N>
std::string_view name_of(const NameTable<Enum, N>& table, Enum value) {
  for (const auto& [e, name] : table)
    if (e == value) return name;
  return "unknown";
}

template <class Enum, std::size_t N>
Enum value_of(const NameTable<Enum, N>& table, std::string_view name, const char* what) {
  for (const auto& [e, n] : table)
    if (n == name) return e;
  throw InputError(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

double frequency(std::size_t hits, std::size_t total) {
  return static_cast<double>(hits) / static_cast<double>(total);
}

double binomial_std_error(double p, std::size_t total) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

std::size_t count_at_least(const std::vector<double>& values, double threshold) {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [&](double v) { return v >= threshold; }));
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidityError("delta must lie in (0, 1)");
}

// Variance bound and mean for experiments sampling `dist` directly.
struct GroundTruth {
  double mean;
  double sigma2;
};

GroundTruth ground_truth(const ExperimentConfig& config) {
  validate(config.dist);
  const Moments m = true_moments(config.dist);
  if (!m.finite_mean()) throw ValidityError("distribution has no finite mean");
  if (!m.finite_variance())
    throw ValidityError("distribution has infinite variance; the deviation envelope needs sigma2 < inf");
  double sigma2 = m.variance;
  if (config.sigma2) {
    if (!(*config.sigma2 > 0.0) || !std::isfinite(*config.sigma2))
      throw ValidityError("sigma2 must be positive");
    sigma2 = *config.sigma2;
  }
  return {m.mean, sigma2};
}

double sigma2_or_default(const ExperimentConfig& config) {
  if (config.sigma2) {
    if (!(*config.sigma2 > 0.0) || !std::isfinite(*config.sigma2))
      throw ValidityError("sigma2 must be positive");
    return *config.sigma2;
  }
  return ground_truth(config).sigma2;
}

std::vector<double> resolved_x_grid(const ExperimentConfig& config, double sigma2) {
  std::vector<double> grid = config.x_grid ? *config.x_grid : default_x_grid(config.n, sigma2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i]))
      throw ValidityError("x_grid values must be positive and finite");
    if (i > 0 && grid[i] <= grid[i - 1]) throw ValidityError("x_grid must be strictly increasing");
  }
  return grid;
}

double resolved_alpha(const ExperimentConfig& config, double sigma2, double effective_delta) {
  if (config.alpha) {
    if (!(*config.alpha > 0.0) || !std::isfinite(*config.alpha))
      throw ValidityError("alpha must be positive");
    return *config.alpha;
  }
  return default_alpha(config.n, sigma2, effective_delta);
}

CatoniConfig fixed_alpha_config(InfluenceKind influence, double alpha) {
  CatoniConfig c;
  c.influence = influence;
  c.alpha = alpha;
  return c;
}

void require_common(const ExperimentConfig& config) {
  if (config.n < 1) throw ValidityError("n must be at least 1");
  if (config.replications < 1) throw ValidityError("replications must be at least 1");
  require_delta(config.delta);
}

ExcessSummary summarize(const std::vector<double>& excess) {
  ExcessSummary s;
  s.median = quantile(excess, 0.5);
  s.p90 = quantile(excess, 0.9);
  double sum = 0.0;
  for (double e : excess) sum += e;
  s.mean = sum / static_cast<double>(excess.size());
  return s;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) { return name_of(kExperimentNames, kind); }
std::string_view to_string(EstimatorKind kind) { return name_of(kEstimatorNames, kind); }
std::string_view to_string(OutputFormat format) { return name_of(kFormatNames, format); }

ExperimentKind experiment_from_string(std::string_view name) {
  if (name == "bounds-table") return ExperimentKind::bounds_table;
  return value_of(kExperimentNames, name, "experiment");
}
EstimatorKind estimator_from_string(std::string_view name) {
  return value_of(kEstimatorNames, name, "estimator");
}
OutputFormat format_from_string(std::string_view name) {
  return value_of(kFormatNames, name, "format");
}

std::vector<EstimatorKind> parse_estimator_list(std::string_view text) {
  std::vector<EstimatorKind> out;
  while (true) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) {
      const EstimatorKind kind = estimator_from_string(item);
      if (std::find(out.begin(), out.end(), kind) == out.end()) out.push_back(kind);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw InputError("estimator list is empty");
  return out;
}

std::vector<double> default_x_grid(std::size_t n, double sigma2) {
  const double nn = static_cast<double>(n);
  const double two_log2 = 2.0 * std::numbers::ln2;
  if (!(nn > two_log2)) throw ValidityError("n too small for a non-vacuous tail bound");
  const double x0 = std::sqrt(sigma2 * two_log2 / (nn - two_log2));
  std::vector<double> grid(10);
  for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = x0 * (1.0 + 0.5 * static_cast<double>(k + 1));
  return grid;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InputError("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

void validate(const ExperimentConfig& config) {
  require_common(config);
  switch (config.experiment) {
    case ExperimentKind::tail: {
      if (config.estimators.empty()) throw ValidityError("no estimators selected");
      const GroundTruth truth = ground_truth(config);
      catoni_width(config.n, truth.sigma2, config.delta);
      resolved_alpha(config, truth.sigma2, config.delta);
      resolved_x_grid(config, truth.sigma2);
      if (config.mom_blocks && (*config.mom_blocks < 1 || *config.mom_blocks > config.n))
        throw ValidityError("mom_blocks must lie in [1, n]");
      break;
    }
    case ExperimentKind::uniform: {
      if (config.class_size < 1) throw ValidityError("class_size must be at least 1");
      if (!std::isfinite(config.shift_spacing)) throw ValidityError("shift_spacing must be finite");
      const GroundTruth truth = ground_truth(config);
      finite_class_width(config.n, truth.sigma2, config.delta, config.class_size);
      resolved_alpha(config, truth.sigma2, config.delta / static_cast<double>(config.class_size));
      break;
    }
    case ExperimentKind::erm: {
      if (config.class_size < 1) throw ValidityError("class_size must be at least 1");
      const auto& erm = config.erm;
      validate(erm.noise);
      if (!(erm.grid_hi >= erm.grid_lo) || !std::isfinite(erm.grid_lo) || !std::isfinite(erm.grid_hi))
        throw ValidityError("bad ERM grid range");
      if (!std::isfinite(erm.truth_slope)) throw ValidityError("truth slope must be finite");
      const RegressionModel model{{{erm.truth_slope}, 0.0}, erm.noise};
      if (!loss_variance_finite(model, erm.loss))
        throw ValidityError("loss variance is infinite for noise " + format_distribution(erm.noise));
      if (erm.oracle_n < 2 || erm.pilot_n < 2) throw ValidityError("oracle_n and pilot_n must be >= 2");
      if (config.sigma2) default_alpha(config.n, *config.sigma2, config.delta);
      else if (!(static_cast<double>(config.n) > 2.0 * std::log(1.0 / config.delta)))
        throw ValidityError("need n > 2 log(1/delta)");
      break;
    }
    case ExperimentKind::bounds_table: {
      if (config.class_size < 1) throw ValidityError("class_size must be at least 1");
      const double sigma2 = sigma2_or_default(config);
      catoni_width(config.n, sigma2, config.delta);
      finite_class_width(config.n, sigma2, config.delta, config.class_size);
      resolved_x_grid(config, sigma2);
      break;
    }
  }
}

TailReport run_tail_experiment(const ExperimentConfig& config) {
  if (config.experiment != ExperimentKind::tail) throw ValidityError("config is not a tail experiment");
  validate(config);
  const GroundTruth truth = ground_truth(config);
  const double alpha = resolved_alpha(config, truth.sigma2, config.delta);
  const std::size_t blocks =
      config.mom_blocks ? *config.mom_blocks : mom_default_blocks(config.delta, config.n);
  const CatoniConfig catoni = fixed_alpha_config(config.influence, alpha);
  const auto& estimators = config.estimators;
  const std::size_t R = config.replications;

  // abs_error[e][r] = |estimate_e - true mean| in replication r.
  std::vector<std::vector<double>> abs_error(estimators.size(), std::vector<double>(R));
  kernels::for_each_index(R, config.execution, [&](std::size_t r) {
    RngStream stream = derive_stream(config.base_seed, r);
    std::vector<double> x(config.n);
    sample_into(config.dist, stream, x);
    for (std::size_t e = 0; e < estimators.size(); ++e) {
      double estimate = 0.0;
      switch (estimators[e]) {
        case EstimatorKind::empirical:
          estimate = empirical_mean(x);
          break;
        case EstimatorKind::catoni:
          estimate = catoni_estimate(x, catoni).value;
          break;
        case EstimatorKind::mom:
          estimate = mom_estimate(x, blocks);
          break;
      }
      abs_error[e][r] = std::fabs(estimate - truth.mean);
    }
  });

  TailReport report;
  report.dist = format_distribution(config.dist);
  report.n = config.n;
  report.delta = config.delta;
  report.sigma2 = truth.sigma2;
  report.true_mean = truth.mean;
  report.replications = R;
  report.influence = std::string(to_string(config.influence));
  report.alpha = alpha;
  report.mom_blocks = blocks;

  for (double x : resolved_x_grid(config, truth.sigma2)) {
    const double envelope = catoni_tail_bound(config.n, truth.sigma2, x);
    for (std::size_t e = 0; e < estimators.size(); ++e) {
      const double p = frequency(count_at_least(abs_error[e], x), R);
      report.rows.push_back({x, estimators[e], p, binomial_std_error(p, R), envelope});
    }
  }
  const double width = catoni_width(config.n, truth.sigma2, config.delta);
  for (std::size_t e = 0; e < estimators.size(); ++e) {
    const double p = frequency(count_at_least(abs_error[e], width), R);
    report.coverage.push_back(
        {estimators[e], width, p, binomial_std_error(p, R), 2.0 * config.delta});
    report.quantiles.push_back({estimators[e], quantile(abs_error[e], 0.5),
                                quantile(abs_error[e], 0.9), quantile(abs_error[e], 0.99)});
  }
  return report;
}

UniformReport run_uniform_experiment(const ExperimentConfig& config) {
  if (config.experiment != ExperimentKind::uniform)
    throw ValidityError("config is not a uniform experiment");
  validate(config);
  const GroundTruth truth = ground_truth(config);
  const std::size_t N = config.class_size;
  // log(N/delta) takes the place of log(1/delta) in the alpha choice.
  const double alpha = resolved_alpha(config, truth.sigma2, config.delta / static_cast<double>(N));
  const double width = finite_class_width(config.n, truth.sigma2, config.delta, N);
  const CatoniConfig catoni = fixed_alpha_config(config.influence, alpha);
  const std::size_t R = config.replications;

  std::vector<double> sup_deviation(R);
  kernels::for_each_index(R, config.execution, [&](std::size_t r) {
    RngStream stream = derive_stream(config.base_seed, r);
    std::vector<double> x(config.n);
    sample_into(config.dist, stream, x);
    std::vector<double> fx(config.n);
    double sup = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      const double shift = static_cast<double>(j) * config.shift_spacing;
      for (std::size_t i = 0; i < x.size(); ++i) fx[i] = x[i] + shift;
      const double estimate = catoni_estimate(fx, catoni).value;
      sup = std::max(sup, std::fabs(truth.mean + shift - estimate));
    }
    sup_deviation[r] = sup;
  });

  UniformReport report;
  report.dist = format_distribution(config.dist);
  report.n = config.n;
  report.delta = config.delta;
  report.sigma2 = truth.sigma2;
  report.class_size = N;
  report.shift_spacing = config.shift_spacing;
  report.replications = R;
  report.influence = std::string(to_string(config.influence));
  report.alpha = alpha;
  report.width = width;
  report.exceedance = frequency(count_at_least(sup_deviation, width), R);
  report.std_error = binomial_std_error(report.exceedance, R);
  report.target = 2.0 * config.delta;
  report.sup_deviation_p50 = quantile(sup_deviation, 0.5);
  report.sup_deviation_p99 = quantile(sup_deviation, 0.99);
  return report;
}

ErmAggregateReport run_erm_experiment(const ExperimentConfig& config) {
  if (config.experiment != ExperimentKind::erm) throw ValidityError("config is not an erm experiment");
  validate(config);
  const auto& settings = config.erm;
  const FunctionClass cls =
      FunctionClass::slope_grid(settings.grid_lo, settings.grid_hi, config.class_size);
  const RegressionModel model{{{settings.truth_slope}, 0.0}, settings.noise};

  // The true regression function rides along as a last member so its risk comes
  // from the same oracle draws.
  FunctionClass with_truth = cls;
  with_truth.members.push_back(model.truth);
  with_truth.descriptors.emplace_back("truth");
  RngStream oracle_stream = derive_stream(config.base_seed, kOracleStreamIndex);
  OracleRisks oracle = oracle_risk(with_truth, model, settings.loss, settings.oracle_n, oracle_stream);
  if (oracle.infinite) throw ValidityError("oracle risk is infinite");
  const double bayes_risk = oracle.risks.back();
  oracle.risks.pop_back();

  double sigma2 = 0.0;
  if (config.sigma2) {
    sigma2 = *config.sigma2;
  } else {
    RngStream pilot = derive_stream(config.base_seed, kPilotStreamIndex);
    sigma2 = loss_variance_bound(cls, model, settings.loss, settings.pilot_n, pilot);
  }
  const double alpha = resolved_alpha(config, sigma2, config.delta);
  const CatoniConfig catoni = fixed_alpha_config(config.influence, alpha);
  const std::size_t R = config.replications;

  ErmAggregateReport report;
  report.catoni_selected.resize(R);
  report.empirical_selected.resize(R);
  report.catoni_excess.resize(R);
  report.empirical_excess.resize(R);
  kernels::for_each_index(R, config.execution, [&](std::size_t r) {
    RngStream stream = derive_stream(config.base_seed, r);
    const Dataset data = draw_dataset(model, stream, config.n);
    const LossMatrix losses = loss_matrix(cls, data.features, data.targets, settings.loss);
    const ErmReport one = excess_risk(catoni_risk_per_function(losses, catoni),
                                      empirical_risk_per_function(losses), oracle.risks);
    report.catoni_selected[r] = one.selected_index;
    report.empirical_selected[r] = one.empirical_selected_index;
    report.catoni_excess[r] = one.excess_risk;
    report.empirical_excess[r] = one.comparison_excess_risk_empirical_mean;
  });

  report.n = config.n;
  report.class_size = cls.size();
  report.replications = R;
  report.noise = format_distribution(settings.noise);
  report.loss = std::string(to_string(settings.loss));
  report.influence = std::string(to_string(config.influence));
  report.sigma2 = sigma2;
  report.alpha = alpha;
  report.closed_form_oracle = oracle.closed_form;
  report.oracle_risks = oracle.risks;
  report.m_star = *std::min_element(oracle.risks.begin(), oracle.risks.end());
  report.bayes_risk = bayes_risk;
  report.grid_floor = report.m_star - bayes_risk;
  report.catoni = summarize(report.catoni_excess);
  report.empirical = summarize(report.empirical_excess);
  return report;
}

BoundsTable run_bounds_table(const ExperimentConfig& config) {
  if (config.experiment != ExperimentKind::bounds_table)
    throw ValidityError("config is not a bounds table");
  validate(config);
  const double sigma2 = sigma2_or_default(config);
  BoundsTable table;
  table.n = config.n;
  table.sigma2 = sigma2;
  table.delta = config.delta;
  table.class_size = config.class_size;
  table.catoni_width = catoni_width(config.n, sigma2, config.delta);
  table.finite_class_width = finite_class_width(config.n, sigma2, config.delta, config.class_size);
  for (double x : resolved_x_grid(config, sigma2))
    table.rows.push_back(
        {x, catoni_tail_bound(config.n, sigma2, x), increment_tail_bound(config.n, sigma2, x)});
  return table;
}

}  // namespace catoni
