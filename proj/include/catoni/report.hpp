#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "catoni/experiments.hpp"

namespace catoni {

// JSON mappings mirror the report structs field for field; from_json inverts them.
void to_json(nlohmann::json& j, const TailReport& report);
void from_json(const nlohmann::json& j, TailReport& report);
void to_json(nlohmann::json& j, const UniformReport& report);
void from_json(const nlohmann::json& j, UniformReport& report);
void to_json(nlohmann::json& j, const ErmAggregateReport& report);
void from_json(const nlohmann::json& j, ErmAggregateReport& report);
void to_json(nlohmann::json& j, const BoundsTable& table);
void from_json(const nlohmann::json& j, BoundsTable& table);

// CSV layouts (header row first, numbers with 17 significant digits):
//   tail:    x,estimator,exceedance,stderr,envelope
//   uniform: n,class_size,delta,width,exceedance,stderr,target
//   erm:     selector,median_excess,p90_excess,mean_excess,grid_floor
//   bounds:  x,catoni_tail_bound,increment_tail_bound,catoni_width,finite_class_width
std::string to_csv(const TailReport& report);
std::string to_csv(const UniformReport& report);
std::string to_csv(const ErmAggregateReport& report);
std::string to_csv(const BoundsTable& table);

/// Serializes with every floating-point number printed as %.17g, so equal
/// reports produce identical bytes and reparse to identical values.
/// Non-finite numbers are written as null.
std::string dump_json(const nlohmann::json& j, int indent = 2);

/// Formats a double with 17 significant digits.
std::string format_number(double value);

template <class Report>
std::string render(const Report& report, OutputFormat format) {
  if (format == OutputFormat::csv) return to_csv(report);
  return dump_json(nlohmann::json(report)) + "\n";
}

/// Writes text to a file, or to standard output for "" / "-". Throws IoError.
void write_output(std::string_view text, const std::string& destination);

}  // namespace catoni
