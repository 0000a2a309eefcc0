// Command-line driver: robust mean estimates and Monte Carlo bound checks.
//
//   catoni estimate [file] --sigma2 1 --delta 0.05
//   catoni tail --dist student_t:3:0.57735:0 --n 500 --delta 0.01 --reps 10000
//   catoni uniform --config uniform.json --workers 4 --format json --out report.json
//   catoni erm --class-size 50 --noise student_t:4.5:1:0 --reps 200
//   catoni bounds --n 100 --sigma2 1 --delta 0.05 --class-size 10 --x-grid 0.1,0.2
//
// Exit codes: 0 ok, 2 invalid configuration, 3 I/O failure, 4 solver did not converge.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catoni/config.hpp"
#include "catoni/errors.hpp"
#include "catoni/estimators.hpp"
#include "catoni/experiments.hpp"
#include "catoni/parse.hpp"
#include "catoni/report.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;
constexpr int kExitConvergence = 4;

struct ExperimentFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> dist;
  std::optional<std::size_t> n;
  std::optional<double> delta;
  std::optional<std::size_t> reps;
  std::optional<std::string> influence;
  std::optional<std::string> estimators;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> workers;
  std::optional<std::size_t> class_size;
  std::optional<double> sigma2;
  std::optional<double> alpha;
  std::optional<double> shift_spacing;
  std::optional<std::size_t> mom_blocks;
  std::optional<std::string> x_grid;
  std::optional<std::string> noise;
  std::optional<std::string> loss;
  std::optional<double> grid_lo;
  std::optional<double> grid_hi;
  std::optional<double> truth_slope;
  std::optional<std::size_t> oracle_n;
};

void add_experiment_flags(CLI::App& cmd, ExperimentFlags& f) {
  cmd.add_option("--config", f.config_path, "JSON config file; flags override its values");
  cmd.add_option("--seed", f.seed, "base seed (u64)");
  cmd.add_option("--dist", f.dist, "family:shape:scale:shift");
  cmd.add_option("--n", f.n, "sample size");
  cmd.add_option("--delta", f.delta, "confidence parameter in (0,1)");
  cmd.add_option("--reps", f.reps, "Monte Carlo replications");
  cmd.add_option("--influence", f.influence, "narrowest|widest|identity");
  cmd.add_option("--estimators", f.estimators, "comma list of empirical,catoni,mom");
  cmd.add_option("--out", f.out, "output path (default: stdout)");
  cmd.add_option("--format", f.format, "csv|json");
  cmd.add_option("--workers", f.workers, "OpenMP threads (0 = runtime default)");
  cmd.add_option("--class-size", f.class_size, "number of functions N");
  cmd.add_option("--sigma2", f.sigma2, "variance bound (default: true variance)");
  cmd.add_option("--alpha", f.alpha, "fixed alpha (default: derived)");
  cmd.add_option("--shift-spacing", f.shift_spacing, "uniform: spacing of the shift class");
  cmd.add_option("--mom-blocks", f.mom_blocks, "median-of-means block count");
  cmd.add_option("--x-grid", f.x_grid, "comma list of deviation levels");
  cmd.add_option("--noise", f.noise, "erm: noise law family:shape:scale:shift");
  cmd.add_option("--loss", f.loss, "erm: squared|absolute");
  cmd.add_option("--grid-lo", f.grid_lo, "erm: smallest slope in the class");
  cmd.add_option("--grid-hi", f.grid_hi, "erm: largest slope in the class");
  cmd.add_option("--truth-slope", f.truth_slope, "erm: slope of the regression function");
  cmd.add_option("--oracle-n", f.oracle_n, "erm: Monte Carlo oracle draws");
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const auto item = catoni::trim(rest.substr(0, comma));
    if (!item.empty()) {
      const auto v = catoni::parse_real(item);
      if (!v) throw catoni::InputError("bad x-grid value '" + std::string(item) + "'");
      grid.push_back(*v);
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return grid;
}

catoni::ExperimentConfig build_config(catoni::ExperimentKind kind, const ExperimentFlags& f) {
  catoni::ExperimentConfig c;
  if (!f.config_path.empty()) c = catoni::load_config(f.config_path);
  c.experiment = kind;
  if (f.seed) c.base_seed = *f.seed;
  if (f.dist) c.dist = catoni::parse_distribution(*f.dist);
  if (f.n) c.n = *f.n;
  if (f.delta) c.delta = *f.delta;
  if (f.reps) c.replications = *f.reps;
  if (f.influence) c.influence = catoni::influence_from_string(*f.influence);
  if (f.estimators) c.estimators = catoni::parse_estimator_list(*f.estimators);
  if (f.out) c.output = *f.out;
  if (f.format) c.format = catoni::format_from_string(*f.format);
  if (f.workers) c.execution = catoni::Execution::with_workers(*f.workers);
  if (f.class_size) c.class_size = *f.class_size;
  if (f.sigma2) c.sigma2 = *f.sigma2;
  if (f.alpha) c.alpha = *f.alpha;
  if (f.shift_spacing) c.shift_spacing = *f.shift_spacing;
  if (f.mom_blocks) c.mom_blocks = *f.mom_blocks;
  if (f.x_grid) c.x_grid = parse_grid(*f.x_grid);
  if (f.noise) c.erm.noise = catoni::parse_distribution(*f.noise);
  if (f.loss) c.erm.loss = catoni::loss_from_string(*f.loss);
  if (f.grid_lo) c.erm.grid_lo = *f.grid_lo;
  if (f.grid_hi) c.erm.grid_hi = *f.grid_hi;
  if (f.truth_slope) c.erm.truth_slope = *f.truth_slope;
  if (f.oracle_n) c.erm.oracle_n = *f.oracle_n;
  return c;
}

void run_experiment(catoni::ExperimentKind kind, const ExperimentFlags& flags) {
  const catoni::ExperimentConfig config = build_config(kind, flags);
  std::string text;
  switch (kind) {
    case catoni::ExperimentKind::tail:
      text = catoni::render(catoni::run_tail_experiment(config), config.format);
      break;
    case catoni::ExperimentKind::uniform:
      text = catoni::render(catoni::run_uniform_experiment(config), config.format);
      break;
    case catoni::ExperimentKind::erm:
      text = catoni::render(catoni::run_erm_experiment(config), config.format);
      break;
    case catoni::ExperimentKind::bounds_table:
      text = catoni::render(catoni::run_bounds_table(config), config.format);
      break;
  }
  catoni::write_output(text, config.output);
}

struct EstimateFlags {
  std::string input;
  std::optional<std::string> estimators;
  std::string influence = "widest";
  std::optional<double> alpha;
  std::optional<double> sigma2;
  double delta = 0.05;
  std::optional<std::size_t> blocks;
  std::string format = "csv";
  std::string out;
};

void run_estimate(const EstimateFlags& f) {
  std::vector<double> values;
  if (f.input.empty() || f.input == "-") {
    values = catoni::read_numbers(std::cin);
  } else {
    std::ifstream file(f.input);
    if (!file) throw catoni::IoError("cannot read '" + f.input + "'");
    values = catoni::read_numbers(file);
  }
  if (values.empty()) throw catoni::InputError("input contains no numbers");

  std::vector<catoni::EstimatorKind> kinds;
  if (f.estimators) {
    kinds = catoni::parse_estimator_list(*f.estimators);
  } else {
    kinds = {catoni::EstimatorKind::empirical, catoni::EstimatorKind::mom};
    if (f.alpha || f.sigma2) kinds.insert(kinds.begin() + 1, catoni::EstimatorKind::catoni);
  }

  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "estimator,value\n";
  for (const auto kind : kinds) {
    nlohmann::json row{{"estimator", std::string(catoni::to_string(kind))}};
    double value = 0.0;
    switch (kind) {
      case catoni::EstimatorKind::empirical:
        value = catoni::empirical_mean(values);
        break;
      case catoni::EstimatorKind::catoni: {
        catoni::CatoniConfig config;
        config.influence = catoni::influence_from_string(f.influence);
        if (f.alpha) {
          config.alpha = *f.alpha;
        } else if (f.sigma2) {
          config.alpha = catoni::DerivedAlpha{f.delta, *f.sigma2};
        } else {
          throw catoni::ValidityError("catoni needs --alpha or --sigma2");
        }
        const auto result = catoni::catoni_estimate(values, config);
        value = result.value;
        row["iterations"] = result.iterations;
        row["bracket_width"] = result.bracket_width;
        row["alpha"] = result.alpha_used;
        break;
      }
      case catoni::EstimatorKind::mom: {
        const std::size_t k = f.blocks ? *f.blocks : catoni::mom_default_blocks(f.delta, values.size());
        value = catoni::mom_estimate(values, k);
        row["blocks"] = k;
        break;
      }
    }
    row["value"] = value;
    rows.push_back(row);
    csv += std::string(catoni::to_string(kind)) + "," + catoni::format_number(value) + "\n";
  }

  const auto format = catoni::format_from_string(f.format);
  const std::string text =
      format == catoni::OutputFormat::csv
          ? csv
          : catoni::dump_json({{"n", values.size()}, {"estimates", rows}}) + "\n";
  catoni::write_output(text, f.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust mean estimation and deviation-bound verification"};
  app.require_subcommand(1);

  EstimateFlags estimate_flags;
  auto* estimate = app.add_subcommand("estimate", "estimate the mean of numbers read one per line");
  estimate->add_option("input", estimate_flags.input, "input file (default: stdin)");
  estimate->add_option("--estimators", estimate_flags.estimators, "comma list of empirical,catoni,mom");
  estimate->add_option("--influence", estimate_flags.influence, "narrowest|widest|identity");
  estimate->add_option("--alpha", estimate_flags.alpha, "fixed alpha");
  estimate->add_option("--sigma2", estimate_flags.sigma2, "variance bound for the derived alpha");
  estimate->add_option("--delta", estimate_flags.delta, "confidence parameter in (0,1)");
  estimate->add_option("--blocks", estimate_flags.blocks, "median-of-means block count");
  estimate->add_option("--format", estimate_flags.format, "csv|json");
  estimate->add_option("--out", estimate_flags.out, "output path (default: stdout)");

  ExperimentFlags experiment_flags;
  struct Sub {
    const char* name;
    const char* help;
    catoni::ExperimentKind kind;
    CLI::App* app = nullptr;
  };
  Sub subs[] = {
      {"tail", "tail and coverage frequencies against the deviation envelope",
       catoni::ExperimentKind::tail},
      {"uniform", "sup-deviation frequency over a finite shift class", catoni::ExperimentKind::uniform},
      {"erm", "excess risk of robust vs empirical risk minimization", catoni::ExperimentKind::erm},
      {"bounds", "table of closed-form bounds", catoni::ExperimentKind::bounds_table},
  };
  for (auto& sub : subs) {
    sub.app = app.add_subcommand(sub.name, sub.help);
    add_experiment_flags(*sub.app, experiment_flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInvalid;
  }

  try {
    if (estimate->parsed()) {
      run_estimate(estimate_flags);
    } else {
      for (const auto& sub : subs)
        if (sub.app->parsed()) run_experiment(sub.kind, experiment_flags);
    }
  } catch (const catoni::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (bracket [" << e.lo() << ", " << e.hi() << "] after "
              << e.iterations() << " iterations)\n";
    return kExitConvergence;
  } catch (const catoni::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const catoni::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}
