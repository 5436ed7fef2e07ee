#pragma once

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace cuspmag {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;
using Cell = std::variant<double, long long, std::string>;

/// Result of one command: a JSON document plus one plot-ready table. The
/// table is also embedded in the JSON so the two views agree row for row.
struct Report {
  std::string command;
  Json results = Json::object();
  Json inputs = Json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Shortest round-trip-safe text for a double (17 significant digits),
/// "inf"/"-inf" for infinities and "nan" for NaN.
std::string format_number(double x);

/// Sorted keys, two-space indent, LF line endings, numbers via format_number
/// (non-finite numbers become strings).
std::string to_json(const Report& report);
std::string dump_json(const Json& value);
std::string to_csv(const Report& report);

/// JSON number, or the strings "inf"/"-inf"/"nan".
Json number(double x);

}  // namespace cuspmag
