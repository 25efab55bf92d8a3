#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace qjump::cli {

/// Shortest-free, locale-independent rendering with 17 significant digits.
std::string format_real(double v);

using Cell = std::variant<std::string, double, std::int64_t>;

/// Column-named rows rendered as CSV or as a JSON array of objects.
struct DataTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  std::string to_csv() const;
  std::string to_json() const;
};

/// Quote a CSV field when it contains a separator, quote or newline.
std::string csv_escape(const std::string& field);

/// Write to a temporary sibling file and rename it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qjump::cli
