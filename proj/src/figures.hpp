#pragma once

#include "qotto/analysis.hpp"
#include "qotto/csv.hpp"
#include "qotto/run_config.hpp"

namespace qotto::cli {

// Header and rows for `figure <id>` on a normalized config.
void write_figure(const RunConfig& config, csv::Writer& writer, const SweepOptions& options);

}  // namespace qotto::cli
