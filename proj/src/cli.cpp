#include "qotto/cli.hpp"

#include <CLI11.hpp>
#include <array>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>

#include "figures.hpp"
#include "qotto/analysis.hpp"
#include "qotto/csv.hpp"
#include "qotto/errors.hpp"

namespace qotto::cli {

namespace {

using csv::format_double;

// Long flags that map one-to-one onto RunConfig::parameters.
constexpr std::array<const char*, 18> kParameterFlags = {
    "th",        "tc",         "qa",        "qc",        "q",    "omega",
    "omega-a",   "omega-c",    "temp",      "n-max",     "tol",  "grid-start",
    "grid-stop", "grid-step",  "objective", "free",      "per-level", "figure",
};

std::vector<std::string> result_cells(const CycleResult& r) {
  return {format_double(r.work),     format_double(r.heat_in),
          format_double(r.heat_out), csv::format_optional(r.efficiency),
          format_double(r.carnot),   r.positive_work ? "true" : "false",
          std::to_string(r.n_max_used)};
}

const std::vector<std::string> kResultHeader = {"W",      "Q_in",          "Q_out", "eta",
                                                "carnot", "positive_work", "n_max"};

void write_sweep(const SweepTable& table, csv::Writer& w) {
  std::vector<std::string> header = table.swept_names;
  header.insert(header.end(), kResultHeader.begin(), kResultHeader.end());
  header.emplace_back("status");
  w.row(header);
  for (const SweepRow& row : table.rows) {
    std::vector<std::string> cells;
    for (double v : row.values) cells.push_back(format_double(v));
    if (row.result) {
      const auto values = result_cells(*row.result);
      cells.insert(cells.end(), values.begin(), values.end());
      cells.emplace_back("ok");
    } else {
      cells.insert(cells.end(), kResultHeader.size(), std::string(csv::kFailed));
      cells.push_back("error: " + csv::sanitize(row.error));
    }
    w.row(cells);
  }
}

OttoCycleSpec cycle_spec(const RunConfig& c, double q_a, double q_c) {
  return {number(c, "th"), number(c, "tc"), OscillatorParams(number(c, "omega-a"), q_a),
          OscillatorParams(number(c, "omega-c"), q_c), c.tail_tol};
}

std::vector<double> grid_of(const RunConfig& c) {
  return make_grid(number(c, "grid-start"), number(c, "grid-stop"), number(c, "grid-step"));
}

void write_body(const RunConfig& c, csv::Writer& w) {
  const SweepOptions options{c.tail_tol, c.jobs};
  switch (c.command) {
    case Command::energies: {
      const OscillatorParams params(number(c, "omega"), number(c, "q"));
      const auto ladder = energy_ladder(params, static_cast<std::size_t>(number(c, "n-max")));
      w.row({"n", "E"});
      for (std::size_t n = 0; n < ladder.size(); ++n) {
        w.row({std::to_string(n), format_double(ladder[n])});
      }
      break;
    }
    case Command::thermal: {
      const ThermalState s = thermal_state(OscillatorParams(number(c, "omega"), number(c, "q")),
                                           number(c, "temp"), c.tail_tol);
      w.row({"T", "log_Z", "S", "U", "P_0", "n_max"});
      w.row({format_double(s.temperature), format_double(s.log_partition),
             format_double(s.entropy), format_double(s.internal_energy),
             format_double(s.populations.front()), std::to_string(s.n_max)});
      break;
    }
    case Command::st_curve: {
      const auto temperatures = grid_of(c);
      w.row({"T", "S"});
      for (const EntropyPoint& p : entropy_temperature_curve(
               OscillatorParams(number(c, "omega"), number(c, "q")), temperatures, c.tail_tol)) {
        w.row({format_double(p.temperature), format_double(p.entropy)});
      }
      break;
    }
    case Command::cycle: {
      const OttoCycleSpec spec = cycle_spec(c, number(c, "qa"), number(c, "qc"));
      if (text(c, "per-level") == "true") {
        w.row({"n", "dP", "dE", "w"});
        for (const LevelDiagnostic& d : per_level_diagnostics(spec)) {
          w.row({std::to_string(d.n), format_double(d.population_change),
                 format_double(d.energy_change), format_double(d.work)});
        }
      } else {
        w.row(kResultHeader);
        w.row(result_cells(evaluate_cycle(spec)));
      }
      break;
    }
    case Command::sweep_qa:
    case Command::efficiency_curve: {
      const auto grid = grid_of(c);
      const auto sweep = c.command == Command::sweep_qa ? sweep_qa : efficiency_curve;
      write_sweep(
          sweep(number(c, "qc"), number(c, "th"), number(c, "tc"), number(c, "omega"), grid,
                options),
          w);
      break;
    }
    case Command::sweep_omega: {
      SweepOmegaRequest request{number(c, "qa"), number(c, "qc"), number(c, "th"),
                                number(c, "tc"), optional_number(c, "omega-c"), grid_of(c)};
      write_sweep(sweep_omega(request, options), w);
      break;
    }
    case Command::boundary: {
      const double q = positive_work_boundary(number(c, "qc"), number(c, "th"), number(c, "tc"),
                                              number(c, "omega"), number(c, "tol"), options);
      w.row({"q_A_boundary"});
      w.row({format_double(q)});
      break;
    }
    case Command::optimize: {
      OptimizeRequest request;
      request.objective =
          text(c, "objective") == "efficiency" ? Objective::efficiency : Objective::work;
      request.free = text(c, "free") == "qa" ? FreeParameter::q_a : FreeParameter::q_c;
      request.fixed_q = number(c, request.free == FreeParameter::q_a ? "qc" : "qa");
      request.t_hot = number(c, "th");
      request.t_cold = number(c, "tc");
      request.omega_a = number(c, "omega-a");
      request.omega_c = number(c, "omega-c");
      request.grid_step = number(c, "grid-step");
      request.refine_tol = number(c, "tol");
      request.grid_start = optional_number(c, "grid-start");
      request.grid_stop = optional_number(c, "grid-stop");
      request.options = options;
      const OptimumReport r = optimize_q(request);
      w.row({"objective", "free", "argmax", "max_value", "bracket_lo", "bracket_hi",
             "refine_tol"});
      w.row({text(c, "objective"), text(c, "free"), format_double(r.argmax),
             format_double(r.max_value), format_double(r.bracket_lo), format_double(r.bracket_hi),
             format_double(r.refinement_tol)});
      break;
    }
    case Command::figure:
      write_figure(c, w, options);
      break;
  }
}

std::string json_value_text(const nlohmann::json& value) {
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number()) return format_double(value.get<double>());
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string joined;
    for (const auto& item : value) {
      if (!joined.empty()) joined += kListSeparator;
      joined += json_value_text(item);
    }
    return joined;
  }
  throw UsageError("unsupported JSON value " + value.dump());
}

// Applies a --config file to `config`; explicit flags are applied afterwards.
void apply_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file '" + path + "' must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") {
      if (parse_command(value.get<std::string>()) != config.command) {
        throw UsageError("config file command '" + value.get<std::string>() +
                         "' does not match '" + std::string(command_name(config.command)) + "'");
      }
    } else if (key == "tail-tol") {
      config.tail_tol = value.get<double>();
    } else if (key == "jobs") {
      config.jobs = value.get<unsigned>();
    } else if (key == "output") {
      config.output_path = value.get<std::string>();
    } else {
      config.parameters[key] = json_value_text(value);
    }
  }
}

}  // namespace

void write_csv(const RunConfig& config, std::ostream& out) {
  csv::Writer writer(out);
  writer.comment(metadata_line(config));
  write_body(config, writer);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig normalized = normalize(config);
    std::ostringstream body;
    write_csv(normalized, body);
    if (normalized.output_path == kStdout) {
      out << body.str();
    } else {
      std::ofstream file(normalized.output_path, std::ios::binary);
      if (!file || !(file << body.str())) {
        err << "qotto: error: cannot write '" << normalized.output_path << "'\n";
        return kComputeError;
      }
    }
    return kSuccess;
  } catch (const UsageError& e) {
    err << "qotto: usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "qotto: domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "qotto: compute error: " << e.what() << '\n';
    return kComputeError;
  }
}

int main(std::span<char* const> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Otto cycles with a q-deformed oscillator working substance", "qotto"};
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::string> flags;
  for (const char* name : kParameterFlags) {
    if (std::string_view(name) == "per-level" || std::string_view(name) == "figure") continue;
    app.add_option(std::string("--") + name, flags[name]);
  }
  bool per_level = false;
  app.add_flag("--per-level", per_level, "Emit per-level diagnostics for 'cycle'");
  double tail_tol = kDefaultTailTol;
  unsigned jobs = 0;
  std::string output(kStdout);
  std::string config_path;
  app.add_option("--tail-tol", tail_tol, "Certified relative tail of every Boltzmann sum");
  app.add_option("--jobs", jobs, "Worker threads for sweeps (0: all processors)");
  app.add_option("--output", output, "Output CSV path ('-' for stdout)");
  app.add_option("--config", config_path, "JSON file of parameters; flags override it");

  std::string figure_id;
  for (int i = 0; i <= static_cast<int>(Command::figure); ++i) {
    const auto command = static_cast<Command>(i);
    CLI::App* sub = app.add_subcommand(std::string(command_name(command)));
    if (command == Command::figure) sub->add_option("id", figure_id, "Figure number")->required();
  }

  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  RunConfig config;
  try {
    config.command = parse_command(app.get_subcommands().front()->get_name());
    if (!config_path.empty()) apply_config_file(config_path, config);
  } catch (const std::exception& e) {
    err << "qotto: usage error: " << e.what() << '\n';
    return kUsageError;
  }
  for (const auto& [name, value] : flags) {
    if (app.get_option("--" + name)->count() > 0) config.parameters[name] = value;
  }
  if (app.get_option("--per-level")->count() > 0) {
    config.parameters["per-level"] = per_level ? "true" : "false";
  }
  if (config.command == Command::figure) config.parameters["figure"] = figure_id;
  if (app.get_option("--tail-tol")->count() > 0) config.tail_tol = tail_tol;
  if (app.get_option("--jobs")->count() > 0) config.jobs = jobs;
  if (app.get_option("--output")->count() > 0) config.output_path = output;
  return run(config, out, err);
}

}  // namespace qotto::cli
