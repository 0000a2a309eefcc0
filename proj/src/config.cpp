#include "catoni/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "catoni/errors.hpp"

namespace catoni {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.contains(it.key()))
      throw InputError(std::string("unknown key '") + it.key() + "' in " + where);
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::string get_string(const json& j, const char* key) { return get_as<std::string>(j, key); }

std::size_t get_count(const json& j, const char* key) {
  if (!j.at(key).is_number_unsigned() && !(j.at(key).is_number_integer() && j.at(key).get<long long>() >= 0))
    throw InputError(std::string("'") + key + "' must be a non-negative integer");
  return j.at(key).get<std::size_t>();
}

void apply_erm(const json& j, ErmSettings& erm) {
  if (!j.is_object()) throw InputError("'erm' must be an object");
  reject_unknown(j, {"grid_lo", "grid_hi", "truth_slope", "noise", "loss", "oracle_n", "pilot_n"},
                 "erm settings");
  if (j.contains("grid_lo")) erm.grid_lo = get_as<double>(j, "grid_lo");
  if (j.contains("grid_hi")) erm.grid_hi = get_as<double>(j, "grid_hi");
  if (j.contains("truth_slope")) erm.truth_slope = get_as<double>(j, "truth_slope");
  if (j.contains("noise")) erm.noise = parse_distribution(get_string(j, "noise"));
  if (j.contains("loss")) erm.loss = loss_from_string(get_string(j, "loss"));
  if (j.contains("oracle_n")) erm.oracle_n = get_count(j, "oracle_n");
  if (j.contains("pilot_n")) erm.pilot_n = get_count(j, "pilot_n");
}

}  // namespace

ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  reject_unknown(j,
                 {"experiment", "dist", "n", "delta", "replications", "seed", "influence",
                  "estimators", "class_size", "shift_spacing", "sigma2", "alpha", "mom_blocks",
                  "x_grid", "format", "out", "workers", "erm"},
                 "config");
  if (j.contains("experiment")) c.experiment = experiment_from_string(get_string(j, "experiment"));
  if (j.contains("dist")) c.dist = parse_distribution(get_string(j, "dist"));
  if (j.contains("n")) c.n = get_count(j, "n");
  if (j.contains("delta")) c.delta = get_as<double>(j, "delta");
  if (j.contains("replications")) c.replications = get_count(j, "replications");
  if (j.contains("seed")) c.base_seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("influence")) c.influence = influence_from_string(get_string(j, "influence"));
  if (j.contains("estimators")) {
    const json& e = j.at("estimators");
    if (e.is_string()) {
      c.estimators = parse_estimator_list(e.get<std::string>());
    } else if (e.is_array()) {
      std::string joined;
      for (const auto& item : e) {
        if (!item.is_string()) throw InputError("estimators must be names");
        joined += item.get<std::string>() + ",";
      }
      c.estimators = parse_estimator_list(joined);
    } else {
      throw InputError("'estimators' must be a list or a comma-separated string");
    }
  }
  if (j.contains("class_size")) c.class_size = get_count(j, "class_size");
  if (j.contains("shift_spacing")) c.shift_spacing = get_as<double>(j, "shift_spacing");
  if (j.contains("sigma2")) c.sigma2 = get_as<double>(j, "sigma2");
  if (j.contains("alpha")) c.alpha = get_as<double>(j, "alpha");
  if (j.contains("mom_blocks")) c.mom_blocks = get_count(j, "mom_blocks");
  if (j.contains("x_grid")) c.x_grid = get_as<std::vector<double>>(j, "x_grid");
  if (j.contains("format")) c.format = format_from_string(get_string(j, "format"));
  if (j.contains("out")) c.output = get_string(j, "out");
  if (j.contains("workers")) c.execution = Execution::with_workers(static_cast<int>(get_count(j, "workers")));
  if (j.contains("erm")) apply_erm(j.at("erm"), c.erm);
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot read config '" + path + "'");
  json j;
  try {
    j = json::parse(file);
  } catch (const json::parse_error& e) {
    throw InputError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j, std::move(base));
}

}  // namespace catoni
