#include "geopump/result_table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "geopump/errors.hpp"

namespace geopump {

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("ResultTable: row width " + std::to_string(row.size()) +
                                " does not match " + std::to_string(columns.size()) +
                                " columns");
  }
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const ResultTable& table) {
  std::string out;
  for (const auto& [key, value] : table.metadata.items()) {
    out += "# " + key + ": " + value.dump() + "\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ResultTable& table) {
  nlohmann::json j;
  j["metadata"] = table.metadata;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  return j.dump(2) + "\n";
}

ResultTable table_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ResultTable t;
  t.metadata = j.at("metadata");
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) {
    t.add_row(row.get<std::vector<double>>());
  }
  return t;
}

void write_table(const ResultTable& table, const std::filesystem::path& path,
                 OutputFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file '" + path.string() + "'");
  out << (format == OutputFormat::Csv ? to_csv(table) : to_json(table));
  out.flush();
  if (!out) throw IoError("failed writing output file '" + path.string() + "'");
}

}  // namespace geopump
