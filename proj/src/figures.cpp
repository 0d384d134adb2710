#include "figures.hpp"

#include <string>
#include <vector>

#include "qotto/errors.hpp"
#include "qotto/thermo.hpp"

namespace qotto::cli {

namespace {

using csv::format_double;

std::vector<double> grid_of(const RunConfig& c) {
  return make_grid(number(c, "grid-start"), number(c, "grid-stop"), number(c, "grid-step"));
}

std::string column(const std::string& quantity, const std::string& label, double value) {
  return quantity + "_" + label + "_" + format_double(value);
}

void entropy_temperature(const RunConfig& c, csv::Writer& w, const SweepOptions& options) {
  const std::vector<double> temperatures = grid_of(c);
  const std::vector<double> qs = number_list(c, "q");
  std::vector<std::string> header{"T"};
  std::vector<std::vector<EntropyPoint>> curves;
  for (double q : qs) {
    header.push_back(column("S", "q", q));
    curves.push_back(
        entropy_temperature_curve(OscillatorParams(number(c, "omega"), q), temperatures,
                                  options.tail_tol));
  }
  w.row(header);
  for (std::size_t i = 0; i < temperatures.size(); ++i) {
    std::vector<std::string> row{format_double(temperatures[i])};
    for (const auto& curve : curves) row.push_back(format_double(curve[i].entropy));
    w.row(row);
  }
}

void energy_curves(const RunConfig& c, csv::Writer& w) {
  const auto levels = static_cast<unsigned>(number(c, "n-max"));
  std::vector<std::string> header{"q"};
  for (unsigned n = 1; n <= levels; ++n) header.push_back("E_" + std::to_string(n));
  w.row(header);
  for (double q : grid_of(c)) {
    const OscillatorParams params(number(c, "omega"), q);
    std::vector<std::string> row{format_double(q)};
    for (unsigned n = 1; n <= levels; ++n) row.push_back(format_double(energy(n, params)));
    w.row(row);
  }
}

void level_surfaces(const RunConfig& c, csv::Writer& w, const SweepOptions& options) {
  const auto levels = static_cast<std::size_t>(number(c, "n-max"));
  const double omega = number(c, "omega");
  w.row({"q_A", "n", "dP", "dE", "w"});
  for (double q_a : grid_of(c)) {
    const OttoCycleSpec spec{number(c, "th"), number(c, "tc"), OscillatorParams(omega, q_a),
                             OscillatorParams(omega, number(c, "qc")), options.tail_tol};
    try {
      const auto rows = per_level_diagnostics(spec, levels);
      for (std::size_t n = 0; n <= levels; ++n) {
        w.row({format_double(q_a), std::to_string(n), format_double(rows[n].population_change),
               format_double(rows[n].energy_change), format_double(rows[n].work)});
      }
    } catch (const Error&) {
      for (std::size_t n = 0; n <= levels; ++n) {
        const std::string failed(csv::kFailed);
        w.row({format_double(q_a), std::to_string(n), failed, failed, failed});
      }
    }
  }
}

std::vector<SweepTable> q_a_sweeps(const RunConfig& c, const SweepOptions& options) {
  const std::vector<double> grid = grid_of(c);
  std::vector<SweepTable> tables;
  for (double q_c : number_list(c, "qc")) {
    tables.push_back(
        sweep_qa(q_c, number(c, "th"), number(c, "tc"), number(c, "omega"), grid, options));
  }
  return tables;
}

void work_curves(const RunConfig& c, csv::Writer& w, const SweepOptions& options) {
  const std::vector<double> q_cs = number_list(c, "qc");
  const std::vector<SweepTable> tables = q_a_sweeps(c, options);
  std::vector<std::string> header{"q_A"};
  for (double q_c : q_cs) {
    header.push_back(column("W", "qC", q_c));
    header.push_back(column("Q_in", "qC", q_c));
    header.push_back(column("eta", "qC", q_c));
  }
  w.row(header);
  for (std::size_t i = 0; i < tables.front().rows.size(); ++i) {
    std::vector<std::string> row{format_double(tables.front().rows[i].values[0])};
    for (const SweepTable& t : tables) {
      const SweepRow& r = t.rows[i];
      if (!r.result) {
        row.insert(row.end(), 3, std::string(csv::kFailed));
        continue;
      }
      row.push_back(format_double(r.result->work));
      row.push_back(format_double(r.result->heat_in));
      row.push_back(csv::format_optional(r.result->efficiency));
    }
    w.row(row);
  }
}

void efficiency_curves(const RunConfig& c, csv::Writer& w, const SweepOptions& options) {
  const std::vector<double> q_cs = number_list(c, "qc");
  const std::vector<SweepTable> tables = q_a_sweeps(c, options);
  std::vector<std::string> header{"q_A", "carnot"};
  for (double q_c : q_cs) header.push_back(column("eta", "qC", q_c));
  w.row(header);
  const std::string carnot = format_double(1.0 - number(c, "tc") / number(c, "th"));
  for (std::size_t i = 0; i < tables.front().rows.size(); ++i) {
    std::vector<std::string> row{format_double(tables.front().rows[i].values[0]), carnot};
    bool any_positive = false;
    for (const SweepTable& t : tables) {
      const SweepRow& r = t.rows[i];
      if (!r.result) {
        row.emplace_back(csv::kFailed);
        continue;
      }
      any_positive = any_positive || r.result->efficiency.has_value();
      row.push_back(csv::format_optional(r.result->efficiency));
    }
    if (any_positive) w.row(row);
  }
}

void omega_curves(const RunConfig& c, csv::Writer& w, const SweepOptions& options,
                  bool fixed_cold_frequency) {
  const std::vector<double> grid = grid_of(c);
  const std::vector<double> qs = number_list(c, fixed_cold_frequency ? "q" : "qc");
  std::vector<std::string> header{fixed_cold_frequency ? "omega_A" : "omega"};
  std::vector<SweepTable> tables;
  for (double q : qs) {
    SweepOmegaRequest request;
    request.t_hot = number(c, "th");
    request.t_cold = number(c, "tc");
    request.grid = grid;
    if (fixed_cold_frequency) {
      request.q_a = q;
      request.q_c = q;
      request.omega_c = number(c, "omega-c");
      header.push_back(column("W", "q", q));
    } else {
      request.q_a = number(c, "qa");
      request.q_c = q;
      header.push_back(column("W", "qC", q));
    }
    tables.push_back(sweep_omega(request, options));
  }
  w.row(header);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row{format_double(grid[i])};
    for (const SweepTable& t : tables) {
      const SweepRow& r = t.rows[i];
      row.push_back(r.result ? format_double(r.result->work) : std::string(csv::kFailed));
    }
    w.row(row);
  }
}

}  // namespace

void write_figure(const RunConfig& config, csv::Writer& writer, const SweepOptions& options) {
  switch (static_cast<int>(number(config, "figure"))) {
    case 1:
      return entropy_temperature(config, writer, options);
    case 2:
      return energy_curves(config, writer);
    case 3:
    case 4:
      return level_surfaces(config, writer, options);
    case 5:
    case 9:
      return work_curves(config, writer, options);
    case 6:
    case 10:
      return efficiency_curves(config, writer, options);
    case 7:
      return omega_curves(config, writer, options, false);
    case 8:
      return omega_curves(config, writer, options, true);
    default:
      throw UsageError("unknown figure");
  }
}

}  // namespace qotto::cli
