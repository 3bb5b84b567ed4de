#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace sgdrates {

/// Shortest decimal string that round-trips the double (std::to_chars), so
/// identical runs produce byte-identical files.
std::string format_double(double value);

/// Minimal RFC-4180 writer: fields are quoted when they contain a comma,
/// quote, or newline; embedded quotes are doubled.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& field(std::string_view text);
  CsvWriter& field(const char* text) { return field(std::string_view(text)); }
  CsvWriter& field(double value) { return field(format_double(value)); }
  CsvWriter& field(std::int64_t value) { return field(std::string_view(std::to_string(value))); }
  CsvWriter& field(bool value) { return field(value ? std::string_view("true") : "false"); }
  void end_row();

 private:
  std::ostream& out_;
  bool row_started_ = false;
};

}  // namespace sgdrates
