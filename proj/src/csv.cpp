#include "handkit/csv.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "handkit/errors.hpp"

namespace handkit::csv {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  std::array<char, 32> buf;
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw Error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string format_fixed(double v, int decimals) {
  if (v == 0.0) v = 0.0;
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(decimals);
  os << v;
  return os.str();
}

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

CsvData read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");

  CsvData data;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();

    if (data.header.empty()) {
      data.header = std::move(cells);
    } else {
      if (cells.size() != data.header.size())
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": expected " + std::to_string(data.header.size()) +
                         " cells, got " + std::to_string(cells.size()));
      data.rows.push_back(std::move(cells));
    }
  }
  if (data.header.empty()) throw ParseError(path + ": empty file");
  return data;
}

}  // namespace handkit::csv
