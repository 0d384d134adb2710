#pragma once

#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qotto::csv {

// Literal written wherever a value is undefined (efficiency without positive work).
inline constexpr std::string_view kUndefined = "NA";
// Literal written in place of values of a grid point that failed to evaluate.
inline constexpr std::string_view kFailed = "ERR";

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);
std::string format_optional(const std::optional<double>& value);

// Comma-free rendering of free text for a CSV cell.
std::string sanitize(std::string_view text);

// Writes '\n'-terminated rows; cells are emitted verbatim.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void comment(std::string_view line);
  void row(const std::vector<std::string>& cells);
  void row(std::initializer_list<std::string> cells) { row(std::vector<std::string>(cells)); }

 private:
  std::ostream& out_;
};

}  // namespace qotto::csv
