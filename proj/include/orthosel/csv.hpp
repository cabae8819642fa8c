#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orthosel {

struct CsvParseError : std::runtime_error {
  CsvParseError(std::size_t line, const std::string& what)
      : std::runtime_error("csv line " + std::to_string(line) + ": " + what),
        line_number(line) {}
  std::size_t line_number;
};

// Reads a single-column CSV of responses: the column is named "y", the header
// row is optional, values are decimal-point floats. Any malformed row is a
// hard error carrying its line number.
std::vector<double> read_y_csv(std::istream& in);
std::vector<double> read_y_csv_file(const std::string& path);

// Shortest round-trip decimal representation (std::to_chars), locale-free.
std::string format_double(double value);

// RFC 4180 quoting: fields containing comma, quote, CR or LF are wrapped in
// double quotes with embedded quotes doubled.
std::string csv_escape(std::string_view field);

// Row-oriented CSV assembly with LF line endings and a header row.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void append_row(const std::vector<std::string>& fields);
  const std::string& str() const { return out_; }

 private:
  std::string out_;
  std::size_t columns_;
};

void write_text_file(const std::string& path, std::string_view content);

}  // namespace orthosel
