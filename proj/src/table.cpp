#include "qcond/table.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace qcond::cli {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<std::string>(c))
    return csv_escape(std::get<std::string>(c));
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  return std::to_string(std::get<std::int64_t>(c));
}

nlohmann::json cell_json(const Cell& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<double>(c)) return std::get<double>(c);
  return std::get<std::int64_t>(c);
}

}  // namespace

std::string emit_table(const Table& table, const Meta& meta, Format format) {
  for (const auto& row : table.rows)
    if (row.size() != table.columns.size())
      throw std::invalid_argument("emit_table: row width does not match header");

  if (format == Format::csv) {
    std::string out;
    for (const auto& [key, value] : meta)
      out += "# " + key + ": " + cell_text(value) + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += cell_text(row[i]);
      }
      out += '\n';
    }
    return out;
  }

  nlohmann::json j;
  nlohmann::json jmeta = nlohmann::json::object();
  for (const auto& [key, value] : meta) jmeta[key] = cell_json(value);
  j["meta"] = jmeta;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    rows.push_back(obj);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace qcond::cli
