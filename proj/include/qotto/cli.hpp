#pragma once

#include <ostream>
#include <span>

#include "qotto/run_config.hpp"

namespace qotto::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kDomainError = 3,
  kComputeError = 4,
};

// Writes the metadata comment, header and rows for a normalized config.
void write_csv(const RunConfig& config, std::ostream& out);

// Normalizes, computes and writes to config.output_path (or `out` for "-").
// Errors become a one-line diagnostic on `err` and the matching exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (flags, --config JSON, subcommand) and calls run().
int main(std::span<char* const> args, std::ostream& out, std::ostream& err);

}  // namespace qotto::cli
