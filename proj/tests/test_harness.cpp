#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catoni/bounds.hpp"
#include "catoni/config.hpp"
#include "catoni/errors.hpp"
#include "catoni/estimators.hpp"
#include "catoni/experiments.hpp"
#include "catoni/report.hpp"

namespace catoni {
namespace {

ExperimentConfig tail_config(std::size_t reps = 200) {
  ExperimentConfig c;
  c.experiment = ExperimentKind::tail;
  c.dist = standardized({Family::student_t, 3.0, 1.0, 0.0});
  c.n = 100;
  c.delta = 0.05;
  c.replications = reps;
  c.base_seed = 42;
  return c;
}

ExperimentConfig uniform_config(std::size_t N) {
  ExperimentConfig c = tail_config(200);
  c.experiment = ExperimentKind::uniform;
  c.class_size = N;
  return c;
}

ExperimentConfig erm_config(std::size_t N, std::size_t reps) {
  ExperimentConfig c;
  c.experiment = ExperimentKind::erm;
  c.n = 100;
  c.delta = 0.05;
  c.replications = reps;
  c.class_size = N;
  c.erm.grid_lo = -1.0;
  c.erm.grid_hi = 1.0;
  c.erm.truth_slope = 0.3;
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(TailExperiment, SingleReplicationGivesZeroOrOne) {
  const auto report = run_tail_experiment(tail_config(1));
  for (const auto& row : report.rows) {
    EXPECT_TRUE(row.exceedance == 0.0 || row.exceedance == 1.0);
    EXPECT_EQ(row.std_error, 0.0);
  }
  for (const auto& c : report.coverage) EXPECT_TRUE(c.exceedance == 0.0 || c.exceedance == 1.0);
}

TEST(TailExperiment, DeterministicAndOrderIndependent) {
  auto config = tail_config(300);
  config.execution = Execution::serial_reference();
  const std::string serial = render(run_tail_experiment(config), OutputFormat::json);
  EXPECT_EQ(render(run_tail_experiment(config), OutputFormat::json), serial);
  for (int w : {1, 2, 4, 8}) {
    config.execution = Execution::with_workers(w);
    EXPECT_EQ(render(run_tail_experiment(config), OutputFormat::json), serial) << w;
  }
}

TEST(TailExperiment, EnvelopeAndMonotonicity) {
  const auto report = run_tail_experiment(tail_config(500));
  ASSERT_EQ(report.rows.size(), 30u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.envelope, catoni_tail_bound(report.n, report.sigma2, row.x));
    EXPECT_GE(row.exceedance, 0.0);
    EXPECT_LE(row.exceedance, 1.0);
  }
  for (std::size_t e = 0; e < 3; ++e)
    for (std::size_t k = 1; k < 10; ++k)
      EXPECT_LE(report.rows[3 * k + e].exceedance, report.rows[3 * (k - 1) + e].exceedance);
  for (const auto& c : report.coverage) {
    EXPECT_EQ(c.width, catoni_width(report.n, report.sigma2, report.delta));
    EXPECT_EQ(c.target, 0.1);
  }
  EXPECT_EQ(report.alpha, default_alpha(100, report.sigma2, 0.05));
}

TEST(TailExperiment, Validation) {
  auto heavy = tail_config();
  heavy.dist = {Family::student_t, 1.5, 1.0, 0.0};
  EXPECT_THROW(run_tail_experiment(heavy), ValidityError);

  auto small = tail_config();
  small.n = 5;
  EXPECT_THROW(run_tail_experiment(small), ValidityError);

  auto no_reps = tail_config();
  no_reps.replications = 0;
  EXPECT_THROW(run_tail_experiment(no_reps), ValidityError);

  auto bad_grid = tail_config();
  bad_grid.x_grid = std::vector<double>{0.1, -0.2};
  EXPECT_THROW(run_tail_experiment(bad_grid), ValidityError);

  auto wrong_kind = tail_config();
  wrong_kind.experiment = ExperimentKind::uniform;
  EXPECT_THROW(run_tail_experiment(wrong_kind), ValidityError);
}

TEST(Reports, TailCsvLayout) {
  auto config = tail_config(50);
  config.x_grid = std::vector<double>{0.1, 0.2};
  const auto rows = lines(to_csv(run_tail_experiment(config)));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "x,estimator,exceedance,stderr,envelope");
  EXPECT_EQ(rows[1].rfind("0.10000000000000001,empirical,", 0), 0u);

  config.x_grid = std::vector<double>{};
  EXPECT_EQ(to_csv(run_tail_experiment(config)), "x,estimator,exceedance,stderr,envelope\n");
}

TEST(Reports, OtherCsvHeaders) {
  EXPECT_EQ(lines(to_csv(UniformReport{}))[0], "n,class_size,delta,width,exceedance,stderr,target");
  EXPECT_EQ(lines(to_csv(ErmAggregateReport{}))[0],
            "selector,median_excess,p90_excess,mean_excess,grid_floor");
  EXPECT_EQ(lines(to_csv(BoundsTable{}))[0],
            "x,catoni_tail_bound,increment_tail_bound,catoni_width,finite_class_width");
}

TEST(Reports, JsonRoundTrip) {
  const auto tail = run_tail_experiment(tail_config(64));
  const std::string text = dump_json(nlohmann::json(tail));
  const TailReport back = nlohmann::json::parse(text).get<TailReport>();
  EXPECT_EQ(dump_json(nlohmann::json(back)), text);
  ASSERT_EQ(back.rows.size(), tail.rows.size());
  for (std::size_t i = 0; i < tail.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].x, tail.rows[i].x);
    EXPECT_EQ(back.rows[i].estimator, tail.rows[i].estimator);
    EXPECT_EQ(back.rows[i].exceedance, tail.rows[i].exceedance);
    EXPECT_EQ(back.rows[i].std_error, tail.rows[i].std_error);
    EXPECT_EQ(back.rows[i].envelope, tail.rows[i].envelope);
  }
  EXPECT_EQ(back.alpha, tail.alpha);
  EXPECT_EQ(back.dist, tail.dist);
  EXPECT_EQ(back.quantiles.size(), tail.quantiles.size());

  const auto uni = run_uniform_experiment(uniform_config(3));
  const std::string utext = dump_json(nlohmann::json(uni));
  EXPECT_EQ(dump_json(nlohmann::json(nlohmann::json::parse(utext).get<UniformReport>())), utext);

  auto bcfg = tail_config();
  bcfg.experiment = ExperimentKind::bounds_table;
  bcfg.class_size = 4;
  const auto table = run_bounds_table(bcfg);
  const std::string btext = dump_json(nlohmann::json(table));
  EXPECT_EQ(dump_json(nlohmann::json(nlohmann::json::parse(btext).get<BoundsTable>())), btext);
}

TEST(Reports, NumbersUseSeventeenDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(dump_json(nlohmann::json{{"a", 2.0}}, -1), "{\"a\":2.0}");
}

TEST(Reports, UnwritableDestination) {
  EXPECT_THROW(write_output("x", "/nonexistent-dir/for/sure/out.csv"), IoError);
  const auto path = std::filesystem::temp_directory_path() / "catoni_write_test.csv";
  write_output("hello\n", path.string());
  std::ifstream in(path);
  std::string content;
  std::getline(in, content);
  EXPECT_EQ(content, "hello");
  std::filesystem::remove(path);
}

TEST(UniformExperiment, SingleMemberMatchesTailCoverage) {
  auto tail = tail_config(400);
  tail.estimators = {EstimatorKind::catoni};
  const auto t = run_tail_experiment(tail);
  auto uni = tail;
  uni.experiment = ExperimentKind::uniform;
  uni.class_size = 1;
  const auto u = run_uniform_experiment(uni);
  EXPECT_EQ(u.width, t.coverage[0].width);
  EXPECT_EQ(u.alpha, t.alpha);
  EXPECT_EQ(u.exceedance, t.coverage[0].exceedance);
}

TEST(UniformExperiment, EqualShiftsGiveSingleDeviation) {
  auto one = uniform_config(1);
  auto many = uniform_config(7);
  many.shift_spacing = 0.0;
  // Same alpha for both so only the class differs.
  one.alpha = many.alpha = 0.1;
  const auto a = run_uniform_experiment(one);
  const auto b = run_uniform_experiment(many);
  EXPECT_EQ(a.sup_deviation_p50, b.sup_deviation_p50);
  EXPECT_EQ(a.sup_deviation_p99, b.sup_deviation_p99);
}

TEST(UniformExperiment, OrderIndependent) {
  auto config = uniform_config(5);
  config.execution = Execution::serial_reference();
  const auto serial = render(run_uniform_experiment(config), OutputFormat::json);
  for (int w : {2, 4, 8}) {
    config.execution = Execution::with_workers(w);
    EXPECT_EQ(render(run_uniform_experiment(config), OutputFormat::json), serial);
  }
  auto bad = uniform_config(0);
  EXPECT_THROW(run_uniform_experiment(bad), ValidityError);
}

TEST(ErmExperiment, SingletonClassHasNoExcess) {
  const auto report = run_erm_experiment(erm_config(1, 20));
  for (double e : report.catoni_excess) EXPECT_EQ(e, 0.0);
  for (double e : report.empirical_excess) EXPECT_EQ(e, 0.0);
}

TEST(ErmExperiment, NearNoiselessRecoversTruth) {
  auto config = erm_config(21, 20);
  config.erm.truth_slope = 0.0;
  config.erm.noise = {Family::gaussian, 1.0, 1e-9, 0.0};
  const auto report = run_erm_experiment(config);
  EXPECT_TRUE(report.closed_form_oracle);
  for (std::size_t r = 0; r < report.replications; ++r) {
    EXPECT_EQ(report.catoni_excess[r], 0.0);
    EXPECT_EQ(report.catoni_selected[r], 10u);
  }
}

TEST(ErmExperiment, DeterministicAndOrderIndependent) {
  auto config = erm_config(11, 30);
  config.execution = Execution::serial_reference();
  const auto serial = render(run_erm_experiment(config), OutputFormat::json);
  EXPECT_EQ(render(run_erm_experiment(config), OutputFormat::json), serial);
  for (int w : {2, 4}) {
    config.execution = Execution::with_workers(w);
    EXPECT_EQ(render(run_erm_experiment(config), OutputFormat::json), serial);
  }
}

TEST(ErmExperiment, AbsoluteLossUsesMonteCarloOracle) {
  auto config = erm_config(5, 10);
  config.erm.loss = LossKind::absolute;
  config.erm.noise = {Family::student_t, 2.5, 1.0, 0.0};
  config.erm.oracle_n = 20000;
  config.erm.pilot_n = 20000;
  const auto report = run_erm_experiment(config);
  EXPECT_FALSE(report.closed_form_oracle);
  EXPECT_GT(report.sigma2, 0.0);
  for (double e : report.catoni_excess) EXPECT_GE(e, 0.0);
}

TEST(ErmExperiment, InfiniteLossVarianceRejected) {
  auto config = erm_config(5, 10);
  config.erm.noise = {Family::student_t, 3.0, 1.0, 0.0};
  EXPECT_THROW(run_erm_experiment(config), ValidityError);
}

TEST(BoundsTable, ReproducesBoundsModule) {
  auto config = tail_config();
  config.experiment = ExperimentKind::bounds_table;
  config.sigma2 = 2.0;
  config.class_size = 10;
  config.x_grid = std::vector<double>{0.1, 0.5, 1.0};
  const auto t = run_bounds_table(config);
  EXPECT_EQ(t.catoni_width, catoni_width(100, 2.0, 0.05));
  EXPECT_EQ(t.finite_class_width, finite_class_width(100, 2.0, 0.05, 10));
  ASSERT_EQ(t.rows.size(), 3u);
  for (const auto& row : t.rows) {
    EXPECT_EQ(row.catoni_tail_bound, catoni_tail_bound(100, 2.0, row.x));
    EXPECT_EQ(row.increment_tail_bound, increment_tail_bound(100, 2.0, row.x));
  }
}

TEST(Config, ParsesAndRejects) {
  const auto j = nlohmann::json::parse(R"({
    "experiment": "uniform", "dist": "student_t:3:1:0", "n": 250, "delta": 0.02,
    "replications": 7, "seed": 99, "influence": "narrowest", "estimators": ["catoni", "mom"],
    "class_size": 4, "x_grid": [0.1, 0.2], "workers": 3,
    "erm": {"loss": "absolute", "noise": "gaussian:1:2:0"}
  })");
  const auto c = config_from_json(j);
  EXPECT_EQ(c.experiment, ExperimentKind::uniform);
  EXPECT_EQ(c.dist.family, Family::student_t);
  EXPECT_EQ(c.n, 250u);
  EXPECT_EQ(c.delta, 0.02);
  EXPECT_EQ(c.replications, 7u);
  EXPECT_EQ(c.base_seed, 99u);
  EXPECT_EQ(c.influence, InfluenceKind::narrowest);
  EXPECT_EQ(c.estimators.size(), 2u);
  EXPECT_EQ(c.class_size, 4u);
  EXPECT_EQ(c.execution.workers, 3);
  EXPECT_EQ(c.erm.loss, LossKind::absolute);
  EXPECT_EQ(c.erm.noise.scale, 2.0);

  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"bogus": 1})")), InputError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"n": "many"})")), InputError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"n": -3})")), InputError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"dist": "cauchy:1:1:0"})")), InputError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse("[1, 2]")), InputError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), IoError);
}

TEST(Quantile, TypeSeven) {
  EXPECT_EQ(quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_EQ(quantile({5}, 0.99), 5.0);
  EXPECT_DOUBLE_EQ(quantile({0, 10}, 0.9), 9.0);
  EXPECT_THROW(quantile({}, 0.5), InputError);
}

TEST(DefaultGrid, FirstPointIsInsideTheInformativeRange) {
  const auto grid = default_x_grid(500, 1.0);
  ASSERT_EQ(grid.size(), 10u);
  for (double x : grid) EXPECT_LT(catoni_tail_bound(500, 1.0, x), 1.0);
}

}  // namespace
}  // namespace catoni
