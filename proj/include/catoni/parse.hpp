#pragma once

#include <istream>
#include <optional>
#include <string_view>
#include <vector>

namespace catoni {

/// Parses a finite decimal number, ignoring surrounding whitespace.
/// Returns nullopt for anything else (trailing junk, "inf", "nan", empty).
std::optional<double> parse_real(std::string_view text);

std::string_view trim(std::string_view text);

/// Reads one finite number per line; blank lines are skipped. Throws InputError
/// naming the 1-based line number of the first unparsable line.
std::vector<double> read_numbers(std::istream& in);

}  // namespace catoni
