#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qotto/cycle.hpp"

namespace qotto {

inline constexpr double kDefaultQStep = 1e-3;
inline constexpr double kDefaultOmegaStep = 1e-2;

struct SweepOptions {
  double tail_tol = kDefaultTailTol;
  unsigned jobs = 1;  // 0: one worker per hardware thread
};

// A grid point whose cycle could not be evaluated keeps its row; `result` is
// empty and `error` holds the diagnostic.
struct SweepRow {
  std::vector<double> values;
  std::optional<CycleResult> result;
  std::string error;
};

// Rows are ordered by the first swept parameter, whatever order the workers
// finished in.
struct SweepTable {
  std::vector<std::string> swept_names;
  std::vector<SweepRow> rows;
};

enum class Objective { work, efficiency };
enum class FreeParameter { q_a, q_c };

struct OptimumReport {
  double argmax;
  double max_value;
  Objective objective;
  double bracket_lo;
  double bracket_hi;
  double refinement_tol;
};

// start, start + step, ... up to stop (inclusive within step * 1e-9).
std::vector<double> make_grid(double start, double stop, double step);

// Evaluates every spec; output slot i belongs to specs[i].
std::vector<SweepRow> evaluate_all(std::span<const OttoCycleSpec> specs, unsigned jobs);

// Work-only engine: omega fixed on both isochores, q_A swept against q_c.
SweepTable sweep_qa(double q_c, double t_hot, double t_cold, double omega,
                    std::span<const double> grid, const SweepOptions& options = {});

// sweep_qa restricted to positive-work rows (failed rows are kept).
SweepTable efficiency_curve(double q_c, double t_hot, double t_cold, double omega,
                            std::span<const double> grid, const SweepOptions& options = {});

// Lower edge of the positive-work domain in q_A: coarse scan of [0.01, 1] at
// kDefaultQStep for the first W <= 0 -> W > 0 change, then bisection to width
// tol. Throws NoSignChangeError if the scan finds none.
double positive_work_boundary(double q_c, double t_hot, double t_cold, double omega, double tol,
                              const SweepOptions& options = {});

struct OptimizeRequest {
  Objective objective = Objective::work;
  FreeParameter free = FreeParameter::q_a;
  double fixed_q = 1.0;  // the deformation that is not optimized
  double t_hot = 0.5;
  double t_cold = 0.1;
  double omega_a = 1.0;
  double omega_c = 1.0;
  double grid_step = kDefaultQStep;
  double refine_tol = 1e-6;
  // Scanned interval of the free q; defaults to [grid_step, 1].
  std::optional<double> grid_start;
  std::optional<double> grid_stop;
  SweepOptions options;
};

// Coarse grid scan of the free deformation followed by golden-section
// refinement on the bracket around the best grid point. The efficiency
// objective only considers positive-work points.
OptimumReport optimize_q(const OptimizeRequest& request);

struct SweepOmegaRequest {
  double q_a = 1.0;
  double q_c = 1.0;
  double t_hot = 0.5;
  double t_cold = 0.1;
  // Empty: common omega on both isochores. Set: omega_A is swept and omega_C
  // is held at this value.
  std::optional<double> omega_c;
  std::vector<double> grid;
};

SweepTable sweep_omega(const SweepOmegaRequest& request, const SweepOptions& options = {});

}  // namespace qotto
