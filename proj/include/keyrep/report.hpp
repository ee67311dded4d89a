// Tabular report serialization (CSV and JSON).
//
// CSV numbers are written with std::to_chars, so output is locale-independent;
// NaN is written as an empty CSV field and as JSON null.

#pragma once

#include "keyrep/bounds.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace keyrep {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

enum class Format { csv, json };

std::string format_double(double v);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);
void write_table(const Table& table, Format format, std::ostream& out);

/// One row per report: name, the union of input keys (in first-seen order), value,
/// direction, applicable, anchor. Missing inputs are NaN.
Table reports_table(const std::string& command, const std::vector<BoundReport>& reports);

}  // namespace keyrep
