#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "handkit/csv.hpp"
#include "handkit/errors.hpp"

using namespace handkit;
using namespace handkit::csv;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("csvtest_" + name) {
    std::ofstream(path, std::ios::binary) << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("format_double emits the shortest round-trip form") {
  CHECK(format_double(181.5) == "181.5");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");  // negative zero is normalized
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.25) == "-2.25");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e21) == "1e+21");
  // shortest form still parses back to the exact same double
  const double v = 86.48689421632348;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("format_fixed pins the decimal count") {
  CHECK(format_fixed(1.0, 3) == "1.000");
  CHECK(format_fixed(2.345678, 2) == "2.35");
  CHECK(format_fixed(-0.5, 1) == "-0.5");
}

TEST_CASE("write_row joins cells with commas and an LF") {
  std::ostringstream os;
  write_row(os, {"a", "b", "c"});
  write_row(os, {"1.5", "2"});
  CHECK(os.str() == "a,b,c\n1.5,2\n");
}

TEST_CASE("read_csv splits header and rows") {
  TempFile f("basic.csv", "x_mm,y_mm\n1.5,2\n3,4\n");
  const CsvData data = read_csv(f.path);
  REQUIRE(data.header.size() == 2);
  CHECK(data.header[0] == "x_mm");
  CHECK(data.header[1] == "y_mm");
  REQUIRE(data.rows.size() == 2);
  CHECK(data.rows[0][0] == "1.5");
  CHECK(data.rows[1][1] == "4");
}

TEST_CASE("read_csv tolerates CRLF and blank lines") {
  TempFile f("crlf.csv", "a,b\r\n\r\n1,2\r\n\n3,4\n");
  const CsvData data = read_csv(f.path);
  CHECK(data.header == std::vector<std::string>{"a", "b"});
  REQUIRE(data.rows.size() == 2);
  CHECK(data.rows[0] == std::vector<std::string>{"1", "2"});
  CHECK(data.rows[1] == std::vector<std::string>{"3", "4"});
}

TEST_CASE("read_csv keeps empty trailing cells") {
  TempFile f("trailing.csv", "a,b\n1,\n");
  const CsvData data = read_csv(f.path);
  REQUIRE(data.rows.size() == 1);
  REQUIRE(data.rows[0].size() == 2);
  CHECK(data.rows[0][1].empty());
}

TEST_CASE("read_csv reports ragged rows with the line number") {
  TempFile f("ragged.csv", "a,b\n1,2\n1,2,3\n");
  try {
    read_csv(f.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find(":3") != std::string::npos);
    CHECK(what.find("expected 2") != std::string::npos);
  }
}

TEST_CASE("read_csv rejects empty files and missing files") {
  TempFile f("empty.csv", "");
  CHECK_THROWS_AS(read_csv(f.path), ParseError);
  CHECK_THROWS_AS(read_csv("does_not_exist_anywhere.csv"), Error);
}
