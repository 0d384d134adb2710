#include "qotto/cycle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "compensated_sum.hpp"
#include "qotto/errors.hpp"

namespace qotto {

namespace {

// Rethrows the in-flight qotto::Error with the failing cycle stage prepended.
[[noreturn]] void rethrow_at(const std::string& stage) {
  try {
    throw;
  } catch (const DomainError& e) {
    throw DomainError(stage + ": " + e.what());
  } catch (const ResourceError& e) {
    throw ResourceError(stage + ": " + e.what());
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(stage + ": " + e.what());
  }
}

constexpr const char* kHotStage = "hot isochore A->B";
constexpr const char* kColdStage = "cold isochore C->D";
constexpr const char* kWorkStage = "work sum A->B->C->D";

struct Bath {
  const OscillatorParams& params;
  double temperature;
  double log_partition;
  double e0;
};

struct CycleStates {
  ThermalState hot;   // populations at B
  ThermalState cold;  // populations at D (= A)
  std::vector<double> ladder_a;
  std::vector<double> ladder_c;
};

std::size_t certified_cycle_depth(const OttoCycleSpec& spec, std::size_t min_levels) {
  std::size_t depth_hot = 0;
  std::size_t depth_cold = 0;
  PartitionResult z_hot{};
  PartitionResult z_cold{};
  try {
    z_hot = partition_function(spec.params_a, spec.t_hot, spec.tail_tol);
    depth_hot = z_hot.n_max;
  } catch (const Error&) {
    rethrow_at(kHotStage);
  }
  try {
    z_cold = partition_function(spec.params_c, spec.t_cold, spec.tail_tol);
    depth_cold = z_cold.n_max;
  } catch (const Error&) {
    rethrow_at(kColdStage);
  }
  std::size_t depth = std::max({depth_hot, depth_cold, min_levels});

  const std::array<Bath, 2> baths{{
      {spec.params_a, spec.t_hot, z_hot.log_partition, energy(0, spec.params_a)},
      {spec.params_c, spec.t_cold, z_cold.log_partition, energy(0, spec.params_c)},
  }};
  const std::array<const OscillatorParams*, 2> spectra{&spec.params_a, &spec.params_c};

  // Term ratios E_{n+1}(X)/E_n(X) * exp(-gap_n(Y)/T_Y) are non-increasing in n and
  // tend to q_X^{-1} exp(-omega_Y/T_Y) when Y is harmonic (zero otherwise).
  for (const Bath& bath : baths) {
    if (!bath.params.harmonic()) continue;
    for (const OscillatorParams* x : spectra) {
      if (-x->log_q() >= bath.params.omega() / bath.temperature) {
        throw ConvergenceError(
            std::string(kWorkStage) + ": sum of E_n(q=" + std::to_string(x->q()) +
            ") P_n diverges on the harmonic spectrum at omega/T = " +
            std::to_string(bath.params.omega() / bath.temperature));
      }
    }
  }

  const double log_scale = [&] {
    const double u_hot = thermal_state_at_depth(spec.params_a, spec.t_hot, depth).internal_energy;
    const double u_cold =
        thermal_state_at_depth(spec.params_c, spec.t_cold, depth).internal_energy;
    return std::log(spec.tail_tol * (u_hot + u_cold));
  }();

  for (; depth <= kMaxLevels; ++depth) {
    const auto n = static_cast<unsigned>(depth);
    bool certified = true;
    for (const Bath& bath : baths) {
      const double e_n = energy(n, bath.params);
      const double e_next = energy(n + 1, bath.params);
      if (std::isinf(e_n)) continue;  // P_n(Y) and every later population are exactly zero
      const double log_p =
          -(e_n - bath.e0) / bath.temperature - (bath.log_partition + bath.e0 / bath.temperature);
      const double log_p_ratio = -(e_next - e_n) / bath.temperature;
      for (const OscillatorParams* x : spectra) {
        const double log_e = log_energy(n, *x);
        const double log_rho = log_energy(n + 1, *x) - log_e + log_p_ratio;
        if (!(log_rho < 0.0)) {
          certified = false;
          break;
        }
        const double log_tail = log_e + log_p + log_rho - std::log(-std::expm1(log_rho));
        if (log_tail > log_scale) {
          certified = false;
          break;
        }
      }
      if (!certified) break;
    }
    if (certified) return depth;
  }
  throw ConvergenceError(std::string(kWorkStage) + ": not certified within " +
                         std::to_string(kMaxLevels) + " levels");
}

CycleStates resolve(const OttoCycleSpec& spec, std::size_t min_levels) {
  validate(spec);
  const std::size_t depth = certified_cycle_depth(spec, min_levels);
  return {thermal_state_at_depth(spec.params_a, spec.t_hot, depth),
          thermal_state_at_depth(spec.params_c, spec.t_cold, depth),
          energy_ladder(spec.params_a, depth), energy_ladder(spec.params_c, depth)};
}

// Deep levels can have E_n past the double range while E_n P_n is not, so
// those terms go through log E + log P.
struct LevelLogs {
  std::vector<double> p_b;
  std::vector<double> p_a;
  std::vector<double> e_a;
  std::vector<double> e_c;
};

LevelLogs level_logs(const OttoCycleSpec& spec, const CycleStates& states) {
  const std::size_t levels = states.hot.populations.size();
  const auto log_populations = [&](const ThermalState& s, const std::vector<double>& ladder) {
    const double shift = s.log_partition + ladder[0] / s.temperature;
    std::vector<double> out(levels);
    for (std::size_t n = 0; n < levels; ++n) {
      out[n] = -(ladder[n] - ladder[0]) / s.temperature - shift;
    }
    return out;
  };
  LevelLogs logs{log_populations(states.hot, states.ladder_a),
                 log_populations(states.cold, states.ladder_c), std::vector<double>(levels),
                 std::vector<double>(levels)};
  for (std::size_t n = 0; n < levels; ++n) {
    logs.e_a[n] = log_energy(static_cast<unsigned>(n), spec.params_a);
    logs.e_c[n] = log_energy(static_cast<unsigned>(n), spec.params_c);
  }
  return logs;
}

// E P / exp(scale); zero where P underflowed past any double.
double term(double log_e, double log_p, double scale) {
  return std::isinf(log_p) ? 0.0 : std::exp(log_e + log_p - scale);
}

double log_level_work(const LevelLogs& logs, std::size_t n, double scale) {
  const double ab = term(logs.e_a[n], logs.p_b[n], scale);
  const double aa = term(logs.e_a[n], logs.p_a[n], scale);
  const double cb = term(logs.e_c[n], logs.p_b[n], scale);
  const double ca = term(logs.e_c[n], logs.p_a[n], scale);
  return (ab - cb) - (aa - ca);
}

}  // namespace

void validate(const OttoCycleSpec& spec) {
  check_temperature(spec.t_cold);
  check_temperature(spec.t_hot);
  if (spec.t_hot < spec.t_cold) {
    throw DomainError("hot bath temperature " + std::to_string(spec.t_hot) +
                      " is below cold bath temperature " + std::to_string(spec.t_cold));
  }
  check_tail_tol(spec.tail_tol);
}

std::size_t cycle_depth(const OttoCycleSpec& spec) {
  validate(spec);
  return certified_cycle_depth(spec, 0);
}

CycleResult evaluate_cycle(const OttoCycleSpec& spec) {
  const CycleStates states = resolve(spec, 0);
  const auto& p_b = states.hot.populations;
  const auto& p_a = states.cold.populations;
  const std::size_t levels = p_b.size();

  const LevelLogs logs = level_logs(spec, states);
  double log_max_a = -std::numeric_limits<double>::infinity();
  double log_max_c = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < levels; ++n) {
    const double log_p = std::max(logs.p_b[n], logs.p_a[n]);
    log_max_a = std::max(log_max_a, logs.e_a[n] + log_p);
    log_max_c = std::max(log_max_c, logs.e_c[n] + log_p);
  }
  // Sums whose terms pass ~1e304 are accumulated in units of exp(scale).
  const auto scale_for = [](double log_max) { return log_max > 700.0 ? log_max : 0.0; };
  const double scale_in = scale_for(log_max_a);
  const double scale_out = scale_for(log_max_c);
  const double scale_work = scale_for(std::max(log_max_a, log_max_c));

  detail::CompensatedSum work;
  detail::CompensatedSum heat_in;
  detail::CompensatedSum heat_out;
  for (std::size_t n = 0; n < levels; ++n) {
    const bool finite_p = std::min(p_b[n], p_a[n]) >= std::numeric_limits<double>::min();
    const bool direct_a = finite_p && std::isfinite(states.ladder_a[n]);
    const bool direct_c = finite_p && std::isfinite(states.ladder_c[n]);
    const double dp = p_b[n] - p_a[n];
    if (direct_a && scale_in == 0.0) {
      heat_in.add(states.ladder_a[n] * dp);
    } else {
      heat_in.add(term(logs.e_a[n], logs.p_b[n], scale_in) -
                  term(logs.e_a[n], logs.p_a[n], scale_in));
    }
    if (direct_c && scale_out == 0.0) {
      heat_out.add(-states.ladder_c[n] * dp);
    } else {
      heat_out.add(term(logs.e_c[n], logs.p_a[n], scale_out) -
                   term(logs.e_c[n], logs.p_b[n], scale_out));
    }
    if (direct_a && direct_c && scale_work == 0.0) {
      work.add((states.ladder_a[n] - states.ladder_c[n]) * dp);
    } else {
      work.add(log_level_work(logs, n, scale_work));
    }
  }

  const double scaled_work = work.value();
  const double scaled_heat_in = heat_in.value();
  const double scaled_heat_out = heat_out.value();
  if (std::isnan(scaled_work) || std::isnan(scaled_heat_in) || std::isnan(scaled_heat_out)) {
    throw ConvergenceError(std::string(kWorkStage) + ": non-finite term in the work sum");
  }
  // Magnitudes beyond the double range come out as +-inf with the right sign.
  const auto unscale = [](double x, double scale) {
    if (scale == 0.0 || x == 0.0) return x;
    return std::copysign(std::exp(std::log(std::abs(x)) + scale), x);
  };
  CycleResult result{unscale(scaled_work, scale_work), unscale(scaled_heat_in, scale_in),
                     unscale(scaled_heat_out, scale_out), std::nullopt,
                     1.0 - spec.t_cold / spec.t_hot, false, levels - 1};
  result.positive_work = scaled_work > 0.0;
  if (result.positive_work && scaled_heat_in > 0.0) {
    result.efficiency =
        scale_work == scale_in
            ? scaled_work / scaled_heat_in
            : std::exp(std::log(scaled_work) + scale_work - std::log(scaled_heat_in) - scale_in);
  }
  return result;
}

std::vector<LevelDiagnostic> per_level_diagnostics(const OttoCycleSpec& spec,
                                                   std::size_t min_levels) {
  const CycleStates states = resolve(spec, min_levels);
  const LevelLogs logs = level_logs(spec, states);
  std::vector<LevelDiagnostic> rows;
  rows.reserve(states.hot.populations.size());
  for (std::size_t n = 0; n < states.hot.populations.size(); ++n) {
    const double dp = states.hot.populations[n] - states.cold.populations[n];
    const double de = states.ladder_a[n] - states.ladder_c[n];
    const bool direct = std::isfinite(de) &&
                        std::min(states.hot.populations[n], states.cold.populations[n]) >=
                            std::numeric_limits<double>::min();
    rows.push_back({n, dp, de, direct ? (dp == 0.0 ? 0.0 : de * dp) : log_level_work(logs, n, 0.0)});
  }
  return rows;
}

}  // namespace qotto
