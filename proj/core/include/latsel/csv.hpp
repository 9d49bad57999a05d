#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace latsel::csv {

// Shortest representation that round-trips bit-exactly (std::to_chars).
std::string format_double(double v);

// Strict numeric parsers; `context` prefixes the error message.
double parse_double(std::string_view text, const std::string& context);
std::int64_t parse_int(std::string_view text, const std::string& context);
std::uint64_t parse_uint(std::string_view text, const std::string& context);

// Splits one CSV line on commas. No quoting: field values in this toolkit
// are plain labels and numbers. A trailing '\r' is stripped.
std::vector<std::string_view> split_fields(std::string_view line);

// Streams a file line by line (handles the final unterminated line).
// Returns false from the callback to stop early.
void for_each_line(const std::string& path,
                   const std::function<bool(std::size_t lineno, std::string_view line)>& fn);

// Minimal row-oriented writer accumulating into a string buffer.
class Writer {
 public:
  void field(std::string_view v);
  void field(double v) { field(std::string_view(format_double(v))); }
  template <typename T>
    requires std::integral<T>
  void field(T v) {
    field(std::string_view(std::to_string(v)));
  }
  void end_row();

  const std::string& str() const { return buf_; }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
  bool row_open_ = false;
};

void write_file(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

}  // namespace latsel::csv
