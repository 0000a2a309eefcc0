#include "catoni/parse.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "catoni/errors.hpp"

namespace catoni {

std::string_view trim(std::string_view text) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = text.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(ws);
  return text.substr(first, last - first + 1);
}

std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  // from_chars rejects a leading '+', which is common in hand-written data.
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::vector<double> read_numbers(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    const auto value = parse_real(line);
    if (!value)
      throw InputError("line " + std::to_string(line_number) + ": not a finite number: '" +
                       std::string(trim(line)) + "'");
    values.push_back(*value);
  }
  if (in.bad()) throw IoError("read error on input");
  return values;
}

}  // namespace catoni
