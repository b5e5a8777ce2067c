#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qcoex {

/// One table cell. monostate renders as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

/// Tabular result of a command, serializable to CSV or JSON. Output is a
/// pure function of the resolved scenario and tool version: no timestamps,
/// no locale, fixed formatting, so identical runs produce identical bytes.
struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;
  std::string scenario_json;  // resolved scenario, compact JSON

  std::string to_csv() const;
  std::string to_json() const;
};

/// Doubles are rendered with %.12g in CSV; JSON keeps full precision.
std::string format_cell(const Cell& cell);

}
