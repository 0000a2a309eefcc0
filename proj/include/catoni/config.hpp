#pragma once

#include <string>

#include <json.hpp>

#include "catoni/experiments.hpp"

namespace catoni {

/// Applies the keys present in `j` on top of `base`. Unknown keys and wrongly
/// typed values raise InputError.
///
/// Schema (all keys optional):
///   experiment    "tail" | "uniform" | "erm" | "bounds"
///   dist          "family:shape:scale:shift"
///   n, replications, class_size, mom_blocks, workers   non-negative integers
///   seed          unsigned 64-bit integer
///   delta, sigma2, alpha, shift_spacing                numbers
///   influence     "narrowest" | "widest" | "identity"
///   estimators    array of names or "empirical,catoni,mom"
///   x_grid        array of positive numbers
///   format        "csv" | "json"
///   out           output path
///   erm           { grid_lo, grid_hi, truth_slope, noise, loss, oracle_n, pilot_n }
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

/// Reads and parses a JSON config file. Throws IoError if unreadable.
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

}  // namespace catoni
