#include "bdi/common.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace bdi {

std::string_view to_string(Comparator c) {
  switch (c) {
    case Comparator::Ge: return ">=";
    case Comparator::Gt: return ">";
    case Comparator::Le: return "<=";
    case Comparator::Lt: return "<";
    case Comparator::Eq: return "=";
  }
  return "?";
}

std::string_view to_string(Procedure p) {
  return p == Procedure::Maximin ? "maximin" : "maxexpval";
}

std::optional<Procedure> parse_procedure(std::string_view text) {
  if (text == "maximin") return Procedure::Maximin;
  if (text == "maxexpval") return Procedure::MaxExpVal;
  return std::nullopt;
}

ParseError::ParseError(std::string message, int line, int column)
    : Error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + message
                     : message),
      line_(line),
      column_(column) {}

std::string format_exact(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string format_number(double value) {
  if (std::fabs(value) < 1e-12) value = 0.0;
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                           std::chars_format::general, 12);
  return std::string(buf.data(), res.ptr);
}

std::optional<double> parse_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace bdi
