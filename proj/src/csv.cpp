#include "qotto/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace qotto::csv {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buffer{};
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  (void)ec;  // 32 bytes always holds the shortest form of a double
  return std::string(buffer.data(), end);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string(kUndefined);
}

std::string sanitize(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return out;
}

void Writer::comment(std::string_view line) { out_ << "# " << line << '\n'; }

void Writer::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace qotto::csv
