#include "qotto/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "compensated_sum.hpp"
#include "qotto/errors.hpp"

namespace qotto {

void check_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be positive and finite, got " +
                      std::to_string(temperature));
  }
}

void check_tail_tol(double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw DomainError("tail tolerance must lie in (0, 1), got " + std::to_string(tail_tol));
  }
}

std::size_t certified_depth(const OscillatorParams& params, double temperature, double tail_tol) {
  check_temperature(temperature);
  check_tail_tol(tail_tol);

  const double e0 = energy(0, params);
  detail::CompensatedSum weights;
  detail::CompensatedSum weighted_energies;
  weights.add(1.0);

  double e_n = energy(1, params);
  for (std::size_t n = 1; n <= kMaxLevels; ++n) {
    const double shifted = e_n - e0;
    const double w = std::exp(-shifted / temperature);
    if (w > 0.0) {
      weights.add(w);
      weighted_energies.add(shifted * w);
    }

    const double e_next = energy(static_cast<unsigned>(n + 1), params);
    const double beta_gap = (e_next - e_n) / temperature;
    const double rho = std::exp(-beta_gap);

    double weight_tail = 0.0;
    double energy_tail = 0.0;
    if (w > 0.0 && rho > 0.0) {
      weight_tail = w * rho / -std::expm1(-beta_gap);
      const double rho_energy = ((e_next - e0) / shifted) * rho;
      energy_tail = rho_energy < 1.0 ? shifted * w * rho_energy / (1.0 - rho_energy)
                                     : std::numeric_limits<double>::infinity();
    }
    if (weight_tail <= tail_tol * weights.value() &&
        energy_tail <= tail_tol * weighted_energies.value()) {
      return n;
    }
    e_n = e_next;
  }
  throw ConvergenceError("Boltzmann sum not certified within " + std::to_string(kMaxLevels) +
                         " levels (q=" + std::to_string(params.q()) +
                         ", omega=" + std::to_string(params.omega()) +
                         ", T=" + std::to_string(temperature) + ")");
}

ThermalState thermal_state_at_depth(const OscillatorParams& params, double temperature,
                                    std::size_t n_max) {
  check_temperature(temperature);
  const std::vector<double> ladder = energy_ladder(params, n_max);
  const double e0 = ladder.front();

  std::vector<double> weights(ladder.size());
  detail::CompensatedSum total;
  for (std::size_t n = 0; n < ladder.size(); ++n) {
    weights[n] = std::exp(-(ladder[n] - e0) / temperature);
    total.add(weights[n]);
  }
  const double norm = total.value();
  const double log_norm = std::log(norm);

  ThermalState state{temperature, params, n_max, std::move(weights), 0.0, 0.0, 0.0};
  detail::CompensatedSum entropy;
  detail::CompensatedSum internal_energy;
  for (std::size_t n = 0; n < ladder.size(); ++n) {
    double& p = state.populations[n];
    p /= norm;
    if (p > 0.0) {
      const double log_p = -(ladder[n] - e0) / temperature - log_norm;
      entropy.add(-p * log_p);
      internal_energy.add(p * ladder[n]);
    }
  }
  state.log_partition = -e0 / temperature + log_norm;
  state.entropy = std::max(0.0, entropy.value());
  state.internal_energy = internal_energy.value();
  return state;
}

PartitionResult partition_function(const OscillatorParams& params, double temperature,
                                   double tail_tol) {
  const std::size_t n_max = certified_depth(params, temperature, tail_tol);
  const double e0 = energy(0, params);
  detail::CompensatedSum total;
  for (std::size_t n = 0; n <= n_max; ++n) {
    total.add(std::exp(-(energy(static_cast<unsigned>(n), params) - e0) / temperature));
  }
  return {-e0 / temperature + std::log(total.value()), n_max};
}

ThermalState thermal_state(const OscillatorParams& params, double temperature, double tail_tol) {
  return thermal_state_at_depth(params, temperature,
                                certified_depth(params, temperature, tail_tol));
}

std::vector<EntropyPoint> entropy_temperature_curve(const OscillatorParams& params,
                                                    std::span<const double> temperatures,
                                                    double tail_tol) {
  for (double t : temperatures) check_temperature(t);
  std::vector<EntropyPoint> curve;
  curve.reserve(temperatures.size());
  for (double t : temperatures) curve.push_back({t, thermal_state(params, t, tail_tol).entropy});
  return curve;
}

}  // namespace qotto
