#include "cuspmag/report.hpp"

#include "cuspmag/error.hpp"

#include <charconv>
#include <cmath>

namespace cuspmag {

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("report row width differs from header");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return std::signbit(x) ? "-0" : "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Json number(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return x;
}

namespace {

void emit(const Json& v, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {  // std::map order: sorted
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        emit(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(v.begin(), v.end(), [](const Json& x) { return x.is_structured(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          emit(v[i], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(v[i], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      if (std::isfinite(x)) out += format_number(x);
      else out += "\"" + format_number(x) + "\"";
      return;
    }
    default:
      out += v.dump(-1, ' ', false, Json::error_handler_t::replace);
  }
}

Json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) return number(x);
        else return x;
      },
      c);
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(x);
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(x);
        } else {
          if (x.find_first_of(",\"\n") == std::string::npos) return x;
          std::string q = "\"";
          for (char ch : x) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          return q + "\"";
        }
      },
      c);
}

}  // namespace

std::string dump_json(const Json& value) {
  std::string out;
  emit(value, out, 0);
  out += "\n";
  return out;
}

std::string to_json(const Report& r) {
  Json doc = Json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = r.command;
  doc["inputs"] = r.inputs;
  doc["results"] = r.results;
  doc["warnings"] = r.warnings;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json jr = Json::array();
    for (const auto& c : row) jr.push_back(cell_json(c));
    rows.push_back(std::move(jr));
  }
  doc["table"] = {{"columns", r.columns}, {"rows", std::move(rows)}};
  return dump_json(doc);
}

std::string to_csv(const Report& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + cell_text(r.columns[i]);
  out += "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
    out += "\n";
  }
  return out;
}

}  // namespace cuspmag
