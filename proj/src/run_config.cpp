#include "qotto/run_config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "qotto/analysis.hpp"
#include "qotto/csv.hpp"
#include "qotto/cycle.hpp"
#include "qotto/errors.hpp"

#ifndef QOTTO_VERSION
#define QOTTO_VERSION "0.0.0"
#endif

namespace qotto::cli {

namespace {

using Defaults = std::vector<std::pair<std::string, std::string>>;

struct CommandRules {
  Command command;
  std::string_view name;
  std::vector<std::string> required;
  Defaults defaults;
  std::vector<std::string> optional;
};

const std::vector<CommandRules>& command_rules() {
  static const std::vector<CommandRules> rules = {
      {Command::energies, "energies", {"q", "n-max"}, {{"omega", "1"}}, {}},
      {Command::thermal, "thermal", {"q", "temp"}, {{"omega", "1"}}, {}},
      {Command::st_curve,
       "st-curve",
       {"q"},
       {{"omega", "1"}, {"grid-start", "0.05"}, {"grid-stop", "2"}, {"grid-step", "0.05"}},
       {}},
      {Command::cycle,
       "cycle",
       {"th", "tc", "qa", "qc"},
       {{"per-level", "false"}},
       {"omega", "omega-a", "omega-c"}},
      {Command::sweep_qa,
       "sweep-qa",
       {"qc", "th", "tc"},
       {{"omega", "1"}, {"grid-start", "0.01"}, {"grid-stop", "1"}, {"grid-step", "0.001"}},
       {}},
      {Command::sweep_omega,
       "sweep-omega",
       {"qa", "qc", "th", "tc"},
       {{"grid-start", "0.01"}, {"grid-stop", "1"}, {"grid-step", "0.01"}},
       {"omega-c"}},
      {Command::boundary,
       "boundary",
       {"qc", "th", "tc"},
       {{"omega", "1"}, {"tol", "1e-06"}},
       {}},
      {Command::optimize,
       "optimize",
       {"th", "tc", "free"},
       {{"objective", "work"}, {"grid-step", "0.001"}, {"tol", "1e-06"}},
       {"qa", "qc", "omega", "omega-a", "omega-c", "grid-start", "grid-stop"}},
      {Command::efficiency_curve,
       "efficiency-curve",
       {"qc", "th", "tc"},
       {{"omega", "1"}, {"grid-start", "0.01"}, {"grid-stop", "1"}, {"grid-step", "0.001"}},
       {}},
      {Command::figure, "figure", {"figure"}, {}, {}},
  };
  return rules;
}

const CommandRules& rules_for(Command command) {
  for (const auto& r : command_rules()) {
    if (r.command == command) return r;
  }
  throw UsageError("unknown command");
}

const std::set<std::string>& integer_keys() {
  static const std::set<std::string> keys = {"n-max", "figure"};
  return keys;
}

double parse_number(const std::string& key, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || !std::isfinite(value)) {
    throw UsageError("parameter --" + key + ": '" + text + "' is not a finite number");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, sep)) items.push_back(item);
  if (!text.empty() && text.back() == sep) items.emplace_back();
  return items;
}

std::string canonical_value(const std::string& key, const std::string& value) {
  if (key == "per-level") {
    if (value == "true" || value == "1") return "true";
    if (value == "false" || value == "0") return "false";
    throw UsageError("parameter --per-level expects true or false");
  }
  if (key == "objective") {
    if (value == "work" || value == "efficiency") return value;
    throw UsageError("parameter --objective expects work or efficiency");
  }
  if (key == "free") {
    if (value == "qa" || value == "qc") return value;
    throw UsageError("parameter --free expects qa or qc");
  }
  std::string out;
  for (const std::string& item : split(value, kListSeparator)) {
    const double x = parse_number(key, item);
    if (integer_keys().contains(key) && (x < 0 || x != std::floor(x) || x > 1e9)) {
      throw UsageError("parameter --" + key + " expects a non-negative integer");
    }
    if (!out.empty()) out += kListSeparator;
    out += csv::format_double(x);
  }
  if (out.empty()) throw UsageError("parameter --" + key + " is empty");
  return out;
}

void check_q(double q) { OscillatorParams(1.0, q); }

void check_q_grid(const RunConfig& c) {
  for (double q : make_grid(number(c, "grid-start"), number(c, "grid-stop"),
                            number(c, "grid-step"))) {
    check_q(q);
  }
}

void check_positive_grid(const RunConfig& c) {
  if (!(number(c, "grid-start") > 0.0)) throw DomainError("grid start must be positive");
  (void)make_grid(number(c, "grid-start"), number(c, "grid-stop"), number(c, "grid-step"));
}

void check_baths(const RunConfig& c) {
  validate(OttoCycleSpec{number(c, "th"), number(c, "tc"), OscillatorParams(1.0, 1.0),
                         OscillatorParams(1.0, 1.0), c.tail_tol});
}

void check_list(const RunConfig& c, const std::string& key, bool is_q) {
  for (double v : number_list(c, key)) {
    if (is_q) {
      check_q(v);
    } else {
      OscillatorParams(v, 1.0);
    }
  }
}

// Physical domain checks; nothing here does real computation.
void check_domain(const RunConfig& c) {
  check_tail_tol(c.tail_tol);
  const auto has = [&](const char* key) { return c.parameters.contains(key); };
  switch (c.command) {
    case Command::energies:
      OscillatorParams(number(c, "omega"), number(c, "q"));
      if (number(c, "n-max") > static_cast<double>(kMaxLevels)) {
        throw DomainError("n-max exceeds the level cap " + std::to_string(kMaxLevels));
      }
      break;
    case Command::thermal:
      OscillatorParams(number(c, "omega"), number(c, "q"));
      check_temperature(number(c, "temp"));
      break;
    case Command::st_curve:
      OscillatorParams(number(c, "omega"), number(c, "q"));
      check_positive_grid(c);
      break;
    case Command::cycle:
    case Command::optimize:
      check_baths(c);
      OscillatorParams(number(c, "omega-a"), 1.0);
      OscillatorParams(number(c, "omega-c"), 1.0);
      if (has("qa")) check_q(number(c, "qa"));
      if (has("qc")) check_q(number(c, "qc"));
      if (c.command == Command::optimize) {
        const double step = number(c, "grid-step");
        if (!(step > 1e-4 && step < 0.1)) throw DomainError("grid step must lie in (1e-4, 0.1)");
        if (!(number(c, "tol") > 0.0)) throw DomainError("refinement tolerance must be positive");
        const double start = optional_number(c, "grid-start").value_or(step);
        const double stop = optional_number(c, "grid-stop").value_or(1.0);
        for (double q : make_grid(start, stop, step)) check_q(q);
      }
      break;
    case Command::sweep_qa:
    case Command::efficiency_curve:
    case Command::boundary:
      check_baths(c);
      check_q(number(c, "qc"));
      OscillatorParams(number(c, "omega"), 1.0);
      if (c.command == Command::boundary) {
        if (!(number(c, "tol") > 0.0)) throw DomainError("boundary tolerance must be positive");
      } else {
        check_q_grid(c);
      }
      break;
    case Command::sweep_omega:
      check_baths(c);
      check_q(number(c, "qa"));
      check_q(number(c, "qc"));
      if (has("omega-c")) OscillatorParams(number(c, "omega-c"), 1.0);
      check_positive_grid(c);
      break;
    case Command::figure: {
      const int id = static_cast<int>(number(c, "figure"));
      if (has("th")) check_baths(c);
      if (has("omega")) OscillatorParams(number(c, "omega"), 1.0);
      if (has("omega-c")) OscillatorParams(number(c, "omega-c"), 1.0);
      if (has("qa")) check_q(number(c, "qa"));
      if (has("qc")) check_list(c, "qc", true);
      if (has("q")) check_list(c, "q", true);
      if (id == 1 || id == 7 || id == 8) {
        check_positive_grid(c);
      } else {
        check_q_grid(c);
      }
      break;
    }
  }
}

}  // namespace

std::string_view command_name(Command command) { return rules_for(command).name; }

Command parse_command(std::string_view name) {
  for (const auto& r : command_rules()) {
    if (r.name == name) return r.command;
  }
  throw UsageError("unknown command '" + std::string(name) + "'");
}

double number(const RunConfig& config, const std::string& key) {
  const auto it = config.parameters.find(key);
  if (it == config.parameters.end()) throw UsageError("missing parameter --" + key);
  return parse_number(key, it->second);
}

std::optional<double> optional_number(const RunConfig& config, const std::string& key) {
  if (!config.parameters.contains(key)) return std::nullopt;
  return number(config, key);
}

std::vector<double> number_list(const RunConfig& config, const std::string& key) {
  const auto it = config.parameters.find(key);
  if (it == config.parameters.end()) throw UsageError("missing parameter --" + key);
  std::vector<double> values;
  for (const std::string& item : split(it->second, kListSeparator)) {
    values.push_back(parse_number(key, item));
  }
  return values;
}

std::string text(const RunConfig& config, const std::string& key) {
  const auto it = config.parameters.find(key);
  if (it == config.parameters.end()) throw UsageError("missing parameter --" + key);
  return it->second;
}

RunConfig normalize(const RunConfig& config) {
  RunConfig out = config;
  const CommandRules& rules = rules_for(config.command);

  std::set<std::string> allowed(rules.required.begin(), rules.required.end());
  allowed.insert(rules.optional.begin(), rules.optional.end());
  Defaults defaults = rules.defaults;

  if (config.command == Command::figure) {
    if (!config.parameters.contains("figure")) throw UsageError("'figure' requires a figure id");
    const int id = static_cast<int>(parse_number("figure", text(config, "figure")));
    for (const auto& [key, value] : figure_preset(id).parameters) {
      allowed.insert(key);
      defaults.emplace_back(key, value);
    }
  }

  for (const auto& [key, value] : config.parameters) {
    if (!allowed.contains(key) && std::none_of(defaults.begin(), defaults.end(),
                                               [&](const auto& d) { return d.first == key; })) {
      throw UsageError("parameter --" + key + " is not accepted by '" +
                       std::string(rules.name) + "'");
    }
  }
  for (const std::string& key : rules.required) {
    if (!config.parameters.contains(key)) {
      throw UsageError("'" + std::string(rules.name) + "' requires --" + key);
    }
  }
  for (const auto& [key, value] : defaults) out.parameters.try_emplace(key, value);

  if (config.command == Command::cycle || config.command == Command::optimize) {
    const std::string omega =
        out.parameters.contains("omega") ? out.parameters.at("omega") : std::string("1");
    out.parameters.try_emplace("omega-a", omega);
    out.parameters.try_emplace("omega-c", omega);
    out.parameters.erase("omega");
  }
  if (config.command == Command::optimize) {
    const std::string free = out.parameters.at("free");
    const std::string fixed = free == "qa" ? "qc" : "qa";
    if (free != "qa" && free != "qc") throw UsageError("parameter --free expects qa or qc");
    if (out.parameters.contains(free)) {
      throw UsageError("--" + free + " is the optimized parameter and cannot be fixed");
    }
    if (!out.parameters.contains(fixed)) {
      throw UsageError("'optimize --free " + free + "' requires --" + fixed);
    }
  }

  for (auto& [key, value] : out.parameters) value = canonical_value(key, value);
  check_domain(out);
  return out;
}

std::string metadata_line(const RunConfig& config) {
  std::string line = "qotto version=" QOTTO_VERSION " command=";
  line += command_name(config.command);
  line += " tail-tol=" + csv::format_double(config.tail_tol);
  for (const auto& [key, value] : config.parameters) line += " " + key + "=" + value;
  return line;
}

RunConfig parse_metadata(std::string_view line) {
  std::string body(line);
  if (!body.empty() && body.front() == '#') body.erase(0, 1);
  std::istringstream tokens(body);
  std::string token;
  if (!(tokens >> token) || token != "qotto") {
    throw UsageError("metadata line does not start with 'qotto'");
  }
  RunConfig config;
  bool have_command = false;
  while (tokens >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("malformed metadata token '" + token + "'");
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "version") continue;
    if (key == "command") {
      config.command = parse_command(value);
      have_command = true;
    } else if (key == "tail-tol") {
      config.tail_tol = parse_number(key, value);
    } else {
      config.parameters[key] = value;
    }
  }
  if (!have_command) throw UsageError("metadata line has no command");
  return config;
}

RunConfig figure_preset(int figure_id) {
  RunConfig config;
  config.command = Command::figure;
  auto& p = config.parameters;
  p["figure"] = std::to_string(figure_id);
  const auto q_grid = [&](const char* step) {
    p["grid-start"] = "0.01";
    p["grid-stop"] = "1";
    p["grid-step"] = step;
  };
  switch (figure_id) {
    case 1:
      p["omega"] = "1";
      p["q"] = "0.4|1";
      p["grid-start"] = "0.01";
      p["grid-stop"] = "1";
      p["grid-step"] = "0.01";
      break;
    case 2:
      p["omega"] = "1";
      p["n-max"] = "4";
      q_grid("0.001");
      break;
    case 3:
    case 4:
      p["th"] = "0.5";
      p["tc"] = "0.1";
      p["qc"] = "1";
      p["omega"] = "1";
      p["n-max"] = "10";
      q_grid("0.01");
      break;
    case 5:
    case 6:
      p["th"] = "0.5";
      p["tc"] = "0.1";
      p["omega"] = "1";
      p["qc"] = "1|0.8|0.6";
      q_grid("0.001");
      break;
    case 7:
      p["qa"] = "0.4";
      p["th"] = "1";
      p["tc"] = "0.1";
      p["qc"] = "1|0.8|0.6";
      p["grid-start"] = "0.01";
      p["grid-stop"] = "1";
      p["grid-step"] = "0.01";
      break;
    case 8:
      p["th"] = "0.5";
      p["tc"] = "0.1";
      p["omega-c"] = "0.5";
      p["q"] = "1|0.8|0.6";
      p["grid-start"] = "0.01";
      p["grid-stop"] = "2";
      p["grid-step"] = "0.01";
      break;
    case 9:
      p["th"] = "5";
      p["tc"] = "0.1";
      p["omega"] = "1";
      p["qc"] = "1|0.8|0.6";
      q_grid("0.001");
      break;
    case 10:
      p["th"] = "100";
      p["tc"] = "0.1";
      p["omega"] = "1";
      p["qc"] = "1|0.8|0.6";
      q_grid("0.001");
      break;
    default:
      throw UsageError("unknown figure " + std::to_string(figure_id) + " (supported: 1-10)");
  }
  return config;
}

}  // namespace qotto::cli
