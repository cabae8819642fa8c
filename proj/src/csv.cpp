#include "orthosel/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <system_error>

namespace orthosel {

namespace {

// trailing CR tolerated on input; output is always LF
std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool parse_full_double(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

std::vector<double> read_y_csv(std::istream& in) {
  std::vector<double> values;
  std::string raw;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (line.empty()) {
      if (in.peek() == std::ifstream::traits_type::eof()) break;
      throw CsvParseError(line_no, "empty row");
    }
    double v = 0.0;
    if (parse_full_double(line, v)) {
      values.push_back(v);
      first = false;
      continue;
    }
    if (first && (line == "y" || line == "\"y\"")) {
      first = false;
      continue;
    }
    throw CsvParseError(line_no, "expected a single numeric column named y, got '" +
                                     std::string(line) + "'");
  }
  if (values.empty()) throw CsvParseError(line_no, "no data rows");
  return values;
}

std::vector<double> read_y_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_y_csv(in);
}

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string csv_escape(std::string_view field) {
  const bool needs_quote =
      field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quote) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header)
    : columns_(header.size()) {
  append_row(header);
}

void CsvWriter::append_row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_)
    throw std::invalid_argument("csv row has " + std::to_string(fields.size()) +
                                " fields, expected " + std::to_string(columns_));
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_.push_back(',');
    out_ += csv_escape(fields[i]);
  }
  out_.push_back('\n');
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace orthosel
