#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qotto/thermo.hpp"

namespace qotto::cli {

// Bad flags, unknown commands, missing or unparsable parameters (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command {
  energies,
  thermal,
  st_curve,
  cycle,
  sweep_qa,
  sweep_omega,
  boundary,
  optimize,
  efficiency_curve,
  figure,
};

std::string_view command_name(Command command);
Command parse_command(std::string_view name);

inline constexpr std::string_view kStdout = "-";
inline constexpr char kListSeparator = '|';

// Parameters are keyed by their long flag name without dashes ("th",
// "grid-step", ...). List-valued parameters join their items with '|'.
struct RunConfig {
  Command command = Command::cycle;
  std::map<std::string, std::string> parameters;
  std::string output_path = std::string(kStdout);
  double tail_tol = kDefaultTailTol;
  unsigned jobs = 0;  // 0: one worker per hardware thread

  // Equivalence ignores output_path and jobs; neither changes the numbers.
  bool equivalent(const RunConfig& other) const {
    return command == other.command && parameters == other.parameters &&
           tail_tol == other.tail_tol;
  }
};

// Checks required parameters and domains, fills defaults and rewrites every
// number in canonical shortest form. Throws UsageError or DomainError.
RunConfig normalize(const RunConfig& config);

// "qotto version=<v> command=<c> key=value ..." with keys in sorted order.
std::string metadata_line(const RunConfig& config);
// Inverse of metadata_line; accepts the line with or without its "# " prefix.
RunConfig parse_metadata(std::string_view line);

// Parameter set of one published figure (command = figure).
// Throws UsageError for an unsupported id.
RunConfig figure_preset(int figure_id);

// Typed accessors over a normalized config.
double number(const RunConfig& config, const std::string& key);
std::optional<double> optional_number(const RunConfig& config, const std::string& key);
std::vector<double> number_list(const RunConfig& config, const std::string& key);
std::string text(const RunConfig& config, const std::string& key);

}  // namespace qotto::cli
