#include "latsel/csv.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "latsel/error.hpp"

namespace latsel::csv {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_double(std::string_view text, const std::string& context) {
  double v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw input_error(context + ": invalid number '" + std::string(text) + "'");
  return v;
}

std::int64_t parse_int(std::string_view text, const std::string& context) {
  std::int64_t v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw input_error(context + ": invalid integer '" + std::string(text) + "'");
  return v;
}

std::uint64_t parse_uint(std::string_view text, const std::string& context) {
  std::uint64_t v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw input_error(context + ": invalid unsigned integer '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(begin));
      break;
    }
    out.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
  return out;
}

void for_each_line(const std::string& path,
                   const std::function<bool(std::size_t, std::string_view)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!fn(lineno, line)) return;
  }
}

void Writer::field(std::string_view v) {
  if (row_open_) buf_ += ',';
  buf_.append(v.data(), v.size());
  row_open_ = true;
}

void Writer::end_row() {
  buf_ += '\n';
  row_open_ = false;
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw input_error("cannot open file for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw input_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace latsel::csv
