#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qotto/spectrum.hpp"

namespace qotto {

inline constexpr double kDefaultTailTol = 1e-12;

// Gibbs state of one oscillator at temperature T (k_B = 1), truncated at
// level n_max. Populations are normalized over 0..n_max.
struct ThermalState {
  double temperature;
  OscillatorParams params;
  std::size_t n_max;
  std::vector<double> populations;
  double log_partition;
  double entropy;
  double internal_energy;
};

struct PartitionResult {
  double log_partition;
  std::size_t n_max;
};

// Smallest depth n_max at which the geometric tail bounds of both
// sum_n e^{-(E_n - E_0)/T} and sum_n (E_n - E_0) e^{-(E_n - E_0)/T} drop below
// tail_tol times their partial sums. Gaps never shrink with n, so the ratio of
// the last term is an upper bound for every later ratio.
// Throws ConvergenceError if the cap is reached first.
std::size_t certified_depth(const OscillatorParams& params, double temperature, double tail_tol);

PartitionResult partition_function(const OscillatorParams& params, double temperature,
                                   double tail_tol = kDefaultTailTol);

ThermalState thermal_state(const OscillatorParams& params, double temperature,
                           double tail_tol = kDefaultTailTol);

// Thermal state summed over exactly levels 0..n_max.
ThermalState thermal_state_at_depth(const OscillatorParams& params, double temperature,
                                    std::size_t n_max);

struct EntropyPoint {
  double temperature;
  double entropy;
};

std::vector<EntropyPoint> entropy_temperature_curve(const OscillatorParams& params,
                                                    std::span<const double> temperatures,
                                                    double tail_tol = kDefaultTailTol);

// Throws DomainError unless T is positive and finite.
void check_temperature(double temperature);
// Throws DomainError unless 0 < tail_tol < 1.
void check_tail_tol(double tail_tol);

}  // namespace qotto
