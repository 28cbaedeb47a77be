#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace geopump {

enum class OutputFormat { Csv, Json };

/// Rectangular numeric table plus a provenance block.
///
/// `metadata` is a JSON object; nlohmann keeps keys sorted, which makes
/// both serializations byte-stable.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json metadata = nlohmann::json::object();

  /// Appends a row; throws std::invalid_argument on a width mismatch.
  void add_row(std::vector<double> row);
};

/// CSV: '#'-prefixed metadata lines (one "# key: <json value>" per key),
/// a header row, then rows with 17 significant digits, LF endings.
std::string to_csv(const ResultTable& table);

/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}
std::string to_json(const ResultTable& table);

ResultTable table_from_json(const std::string& text);

/// Writes the table in `format`; throws IoError on any file failure.
void write_table(const ResultTable& table, const std::filesystem::path& path,
                 OutputFormat format);

std::string format_number(double x);

}  // namespace geopump
