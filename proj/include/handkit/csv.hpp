#pragma once

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

namespace handkit::csv {

/// Shortest round-trip decimal form of v ("181.5", "0", not "181.500000").
std::string format_double(double v);

/// Fixed-point form with the given number of decimals.
std::string format_fixed(double v, int decimals);

/// Writes one CSV row: comma separators, LF ending, '.' decimal point.
void write_row(std::ostream& os, const std::vector<std::string>& cells);

struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Minimal reader for the unquoted CSVs this tool exchanges. Skips blank
/// lines; first line is the header. Throws ParseError with the line number
/// on ragged rows.
CsvData read_csv(const std::string& path);

}  // namespace handkit::csv
