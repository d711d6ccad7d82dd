#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace smi::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source file
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

// Parses RFC 4180-style CSV: comma separated, optional double-quoted fields,
// LF or CRLF line endings, optional UTF-8 BOM. Blank lines are skipped.
// An empty input yields an empty header and no rows.
Table parse(std::string_view text);

// Throws ValidationError when the file cannot be opened.
Table read_file(const std::filesystem::path& path);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Strict parse of a finite decimal real; rejects "NA", "nan", "inf", trailing junk.
std::optional<double> parse_real(std::string_view text);

// Fixed six decimal places; negative zero is printed as 0.000000.
std::string fixed6(double value);

// Shortest-exact 17 significant digits; parse_real(full(x)) == x for finite x.
std::string full(double value);

}  // namespace smi::csv
