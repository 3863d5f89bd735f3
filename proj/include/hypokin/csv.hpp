#pragma once

// CSV output: comma separators, '.' decimal point, scientific notation with
// 17 significant digits, mandatory header row. Cell formatting is locale-free
// so identical runs produce byte-identical files.

#include <cstdio>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "hypokin/common.hpp"

namespace hypokin {

using CsvCell = std::variant<std::string, double, long>;

struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;

  void add_row(std::vector<CsvCell> cells) { rows.push_back(std::move(cells)); }
};

inline std::string csv_format(const CsvCell& cell) {
  if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
  if (std::holds_alternative<long>(cell)) return std::to_string(std::get<long>(cell));
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", std::get<double>(cell));
  return buf;
}

inline std::string csv_render(const CsvTable& t) {
  std::string out;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (c) out += ',';
    out += t.header[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_format(row[c]);
    }
    out += '\n';
  }
  return out;
}

inline void csv_write(const CsvTable& t, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw error("cannot open for writing: " + path);
  os << csv_render(t);
}

}  // namespace hypokin
