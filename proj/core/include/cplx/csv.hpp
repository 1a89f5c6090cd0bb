#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cplx::csv {

struct Row {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// RFC 4180 style: comma separated, double-quoted fields may contain commas,
// quotes ("") and newlines. Blank lines are skipped; CRLF is accepted.
// Throws ParseError on an unterminated quote.
std::vector<Row> parse(std::string_view text);

// Quotes the field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);
std::string join(const std::vector<std::string>& fields);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// "%.12g"; the fixed output precision of every numeric CSV column.
std::string format_real(double v);

}  // namespace cplx::csv
