#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cli {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct Document {
  std::string command;
  std::vector<std::pair<std::string, Cell>> params;
  Table rows;
  /// Extra tables. JSON emits them as named arrays; the text table prints
  /// them after the main one; CSV ignores them.
  std::vector<std::pair<std::string, Table>> extra;
};

enum class Format { Table, Csv, Json };

inline constexpr int kSchemaVersion = 1;

/// Shortest form that holds 17 significant digits, independent of locale.
std::string format_real(double v, int digits = 17);

void write(std::ostream& os, const Document& doc, Format format);

}  // namespace cli
