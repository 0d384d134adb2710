#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qotto/spectrum.hpp"
#include "qotto/thermo.hpp"

namespace qotto {

// Four-stroke quantum Otto cycle. The hot isochore (A -> B) runs on the
// params_a spectrum at t_hot; the cold isochore (C -> D) on params_c at
// t_cold. The adiabats keep every level population fixed, so
// P_n(C) = P_n(B) and P_n(A) = P_n(D).
struct OttoCycleSpec {
  double t_hot;
  double t_cold;
  OscillatorParams params_a;
  OscillatorParams params_c;
  double tail_tol = kDefaultTailTol;
};

// Sign convention: heat_out <= 0 in engine operation and work = heat_in + heat_out.
struct CycleResult {
  double work;
  double heat_in;
  double heat_out;
  // Empty unless work > 0.
  std::optional<double> efficiency;
  double carnot;
  bool positive_work;
  std::size_t n_max_used;
};

struct LevelDiagnostic {
  std::size_t n;
  double population_change;  // P_n(B) - P_n(A)
  double energy_change;      // E_n(A) - E_n(C)
  double work;               // energy_change * population_change
};

// Throws DomainError unless t_hot >= t_cold > 0 and tail_tol is in (0, 1).
void validate(const OttoCycleSpec& spec);

CycleResult evaluate_cycle(const OttoCycleSpec& spec);

// One row per level 0..n_max_used, where n_max_used is at least min_levels.
std::vector<LevelDiagnostic> per_level_diagnostics(const OttoCycleSpec& spec,
                                                   std::size_t min_levels = 0);

// Truncation depth shared by both isochores: the larger of the two thermal
// depths, extended until the geometric tails of the four energy-weighted
// sums sum_n E_n(X) P_n(Y) fall below tail_tol times the two internal
// energies. Throws ConvergenceError when one of those sums diverges.
std::size_t cycle_depth(const OttoCycleSpec& spec);

}  // namespace qotto
