#include "catoni/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "catoni/errors.hpp"

namespace catoni {

using nlohmann::json;

namespace {

json estimator_json(EstimatorKind kind) { return std::string(to_string(kind)); }

EstimatorKind estimator_of(const json& j) { return estimator_from_string(j.get<std::string>()); }

void dump_value(std::ostringstream& out, const json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        out << json(it.key()).dump() << (indent < 0 ? ":" : ": ");
        dump_value(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out << ',';
        first = false;
        newline(depth + 1);
        dump_value(out, v, indent, depth + 1);
      }
      newline(depth);
      out << ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out << "null";
      } else {
        std::string text = format_number(v);
        // Keep floats recognizable as floats when reparsed.
        if (text.find_first_of(".eE") == std::string::npos) text += ".0";
        out << text;
      }
      return;
    }
    default:
      out << j.dump();
  }
}

double number_or_nan(const json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string dump_json(const json& j, int indent) {
  std::ostringstream out;
  dump_value(out, j, indent, 0);
  return out.str();
}

void to_json(json& j, const TailReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"x", row.x},
                    {"estimator", estimator_json(row.estimator)},
                    {"exceedance", row.exceedance},
                    {"stderr", row.std_error},
                    {"envelope", row.envelope}});
  json coverage = json::array();
  for (const auto& c : r.coverage)
    coverage.push_back({{"estimator", estimator_json(c.estimator)},
                        {"width", c.width},
                        {"exceedance", c.exceedance},
                        {"stderr", c.std_error},
                        {"target", c.target}});
  json quantiles = json::array();
  for (const auto& q : r.quantiles)
    quantiles.push_back(
        {{"estimator", estimator_json(q.estimator)}, {"p50", q.p50}, {"p90", q.p90}, {"p99", q.p99}});
  j = {{"experiment", "tail"},     {"dist", r.dist},
       {"n", r.n},                 {"delta", r.delta},
       {"sigma2", r.sigma2},       {"true_mean", r.true_mean},
       {"replications", r.replications}, {"influence", r.influence},
       {"alpha", r.alpha},         {"mom_blocks", r.mom_blocks},
       {"rows", rows},             {"coverage", coverage},
       {"quantiles", quantiles}};
}

void from_json(const json& j, TailReport& r) {
  r.dist = j.at("dist").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.delta = j.at("delta").get<double>();
  r.sigma2 = j.at("sigma2").get<double>();
  r.true_mean = j.at("true_mean").get<double>();
  r.replications = j.at("replications").get<std::size_t>();
  r.influence = j.at("influence").get<std::string>();
  r.alpha = j.at("alpha").get<double>();
  r.mom_blocks = j.at("mom_blocks").get<std::size_t>();
  r.rows.clear();
  for (const auto& row : j.at("rows"))
    r.rows.push_back({row.at("x").get<double>(), estimator_of(row.at("estimator")),
                      row.at("exceedance").get<double>(), row.at("stderr").get<double>(),
                      row.at("envelope").get<double>()});
  r.coverage.clear();
  for (const auto& c : j.at("coverage"))
    r.coverage.push_back({estimator_of(c.at("estimator")), c.at("width").get<double>(),
                          c.at("exceedance").get<double>(), c.at("stderr").get<double>(),
                          c.at("target").get<double>()});
  r.quantiles.clear();
  for (const auto& q : j.at("quantiles"))
    r.quantiles.push_back({estimator_of(q.at("estimator")), q.at("p50").get<double>(),
                           q.at("p90").get<double>(), q.at("p99").get<double>()});
}

void to_json(json& j, const UniformReport& r) {
  j = {{"experiment", "uniform"},
       {"dist", r.dist},
       {"n", r.n},
       {"delta", r.delta},
       {"sigma2", r.sigma2},
       {"class_size", r.class_size},
       {"shift_spacing", r.shift_spacing},
       {"replications", r.replications},
       {"influence", r.influence},
       {"alpha", r.alpha},
       {"width", r.width},
       {"exceedance", r.exceedance},
       {"stderr", r.std_error},
       {"target", r.target},
       {"sup_deviation_p50", r.sup_deviation_p50},
       {"sup_deviation_p99", r.sup_deviation_p99}};
}

void from_json(const json& j, UniformReport& r) {
  r.dist = j.at("dist").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.delta = j.at("delta").get<double>();
  r.sigma2 = j.at("sigma2").get<double>();
  r.class_size = j.at("class_size").get<std::size_t>();
  r.shift_spacing = j.at("shift_spacing").get<double>();
  r.replications = j.at("replications").get<std::size_t>();
  r.influence = j.at("influence").get<std::string>();
  r.alpha = j.at("alpha").get<double>();
  r.width = j.at("width").get<double>();
  r.exceedance = j.at("exceedance").get<double>();
  r.std_error = j.at("stderr").get<double>();
  r.target = j.at("target").get<double>();
  r.sup_deviation_p50 = j.at("sup_deviation_p50").get<double>();
  r.sup_deviation_p99 = j.at("sup_deviation_p99").get<double>();
}

namespace {

json summary_json(const ExcessSummary& s) {
  return {{"median", s.median}, {"p90", s.p90}, {"mean", s.mean}};
}

ExcessSummary summary_of(const json& j) {
  return {j.at("median").get<double>(), j.at("p90").get<double>(), j.at("mean").get<double>()};
}

}  // namespace

void to_json(json& j, const ErmAggregateReport& r) {
  j = {{"experiment", "erm"},
       {"n", r.n},
       {"class_size", r.class_size},
       {"replications", r.replications},
       {"noise", r.noise},
       {"loss", r.loss},
       {"influence", r.influence},
       {"sigma2", r.sigma2},
       {"alpha", r.alpha},
       {"closed_form_oracle", r.closed_form_oracle},
       {"oracle_risks", r.oracle_risks},
       {"m_star", r.m_star},
       {"bayes_risk", r.bayes_risk},
       {"grid_floor", r.grid_floor},
       {"catoni", summary_json(r.catoni)},
       {"empirical", summary_json(r.empirical)},
       {"catoni_selected", r.catoni_selected},
       {"empirical_selected", r.empirical_selected},
       {"catoni_excess", r.catoni_excess},
       {"empirical_excess", r.empirical_excess}};
}

void from_json(const json& j, ErmAggregateReport& r) {
  r.n = j.at("n").get<std::size_t>();
  r.class_size = j.at("class_size").get<std::size_t>();
  r.replications = j.at("replications").get<std::size_t>();
  r.noise = j.at("noise").get<std::string>();
  r.loss = j.at("loss").get<std::string>();
  r.influence = j.at("influence").get<std::string>();
  r.sigma2 = j.at("sigma2").get<double>();
  r.alpha = j.at("alpha").get<double>();
  r.closed_form_oracle = j.at("closed_form_oracle").get<bool>();
  r.oracle_risks = j.at("oracle_risks").get<std::vector<double>>();
  r.m_star = j.at("m_star").get<double>();
  r.bayes_risk = j.at("bayes_risk").get<double>();
  r.grid_floor = j.at("grid_floor").get<double>();
  r.catoni = summary_of(j.at("catoni"));
  r.empirical = summary_of(j.at("empirical"));
  r.catoni_selected = j.at("catoni_selected").get<std::vector<std::size_t>>();
  r.empirical_selected = j.at("empirical_selected").get<std::vector<std::size_t>>();
  r.catoni_excess = j.at("catoni_excess").get<std::vector<double>>();
  r.empirical_excess = j.at("empirical_excess").get<std::vector<double>>();
}

void to_json(json& j, const BoundsTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows)
    rows.push_back({{"x", row.x},
                    {"catoni_tail_bound", row.catoni_tail_bound},
                    {"increment_tail_bound", row.increment_tail_bound}});
  j = {{"experiment", "bounds"},
       {"n", t.n},
       {"sigma2", t.sigma2},
       {"delta", t.delta},
       {"class_size", t.class_size},
       {"catoni_width", t.catoni_width},
       {"finite_class_width", t.finite_class_width},
       {"rows", rows}};
}

void from_json(const json& j, BoundsTable& t) {
  t.n = j.at("n").get<std::size_t>();
  t.sigma2 = j.at("sigma2").get<double>();
  t.delta = j.at("delta").get<double>();
  t.class_size = j.at("class_size").get<std::size_t>();
  t.catoni_width = j.at("catoni_width").get<double>();
  t.finite_class_width = j.at("finite_class_width").get<double>();
  t.rows.clear();
  for (const auto& row : j.at("rows"))
    t.rows.push_back({row.at("x").get<double>(), number_or_nan(row.at("catoni_tail_bound")),
                      number_or_nan(row.at("increment_tail_bound"))});
}

std::string to_csv(const TailReport& r) {
  std::string out = "x,estimator,exceedance,stderr,envelope\n";
  for (const auto& row : r.rows) {
    out += format_number(row.x) + "," + std::string(to_string(row.estimator)) + "," +
           format_number(row.exceedance) + "," + format_number(row.std_error) + "," +
           format_number(row.envelope) + "\n";
  }
  return out;
}

std::string to_csv(const UniformReport& r) {
  return "n,class_size,delta,width,exceedance,stderr,target\n" + std::to_string(r.n) + "," +
         std::to_string(r.class_size) + "," + format_number(r.delta) + "," +
         format_number(r.width) + "," + format_number(r.exceedance) + "," +
         format_number(r.std_error) + "," + format_number(r.target) + "\n";
}

std::string to_csv(const ErmAggregateReport& r) {
  std::string out = "selector,median_excess,p90_excess,mean_excess,grid_floor\n";
  const auto line = [&](std::string_view name, const ExcessSummary& s) {
    out += std::string(name) + "," + format_number(s.median) + "," + format_number(s.p90) + "," +
           format_number(s.mean) + "," + format_number(r.grid_floor) + "\n";
  };
  line("catoni", r.catoni);
  line("empirical", r.empirical);
  return out;
}

std::string to_csv(const BoundsTable& t) {
  std::string out = "x,catoni_tail_bound,increment_tail_bound,catoni_width,finite_class_width\n";
  for (const auto& row : t.rows)
    out += format_number(row.x) + "," + format_number(row.catoni_tail_bound) + "," +
           format_number(row.increment_tail_bound) + "," + format_number(t.catoni_width) + "," +
           format_number(t.finite_class_width) + "\n";
  return out;
}

void write_output(std::string_view text, const std::string& destination) {
  if (destination.empty() || destination == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream file(destination, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + destination + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing '" + destination + "'");
}

}  // namespace catoni
