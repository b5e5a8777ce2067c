#include "qcoex/report.hpp"

#include <cinttypes>
#include <cstdio>

#include <json.hpp>

#include "qcoex/version.hpp"

namespace qcoex {

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

nlohmann::ordered_json cell_to_json(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) {
    return nullptr;
  }
  if (const double* d = std::get_if<double>(&cell)) {
    return *d;
  }
  if (const std::int64_t* i = std::get_if<std::int64_t>(&cell)) {
    return *i;
  }
  return std::get<std::string>(cell);
}

}

std::string format_cell(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) {
    return "";
  }
  char buf[64];
  if (const double* d = std::get_if<double>(&cell)) {
    std::snprintf(buf, sizeof(buf), "%.12g", *d);
    return buf;
  }
  if (const std::int64_t* i = std::get_if<std::int64_t>(&cell)) {
    std::snprintf(buf, sizeof(buf), "%" PRId64, *i);
    return buf;
  }
  return std::get<std::string>(cell);
}

std::string Report::to_csv() const {
  std::string out;
  out += "# qcoex ";
  out += kVersion;
  out += ' ';
  out += command;
  out += '\n';
  out += "# scenario: ";
  out += scenario_json;
  out += '\n';
  for (const auto& [key, value] : summary) {
    out += "# ";
    out += key;
    out += ": ";
    out += format_cell(value);
    out += '\n';
  }
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += csv_escape(columns[i]);
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) {
        out += ',';
      }
      out += csv_escape(format_cell(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string Report::to_json() const {
  nlohmann::ordered_json doc;
  doc["tool"] = "qcoex";
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["scenario"] = nlohmann::ordered_json::parse(scenario_json);
  nlohmann::ordered_json summary_obj = nlohmann::ordered_json::object();
  for (const auto& [key, value] : summary) {
    summary_obj[key] = cell_to_json(value);
  }
  doc["summary"] = summary_obj;
  doc["columns"] = columns;
  nlohmann::ordered_json rows_arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const Cell& cell : row) {
      r.push_back(cell_to_json(cell));
    }
    rows_arr.push_back(r);
  }
  doc["rows"] = rows_arr;
  return doc.dump(2) + "\n";
}

}
