#include "qotto/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qotto/errors.hpp"
#include "qotto/parallel.hpp"
#include "qotto/scalar_search.hpp"

namespace qotto {

namespace {

constexpr double kBoundaryScanStart = 0.01;
constexpr double kBoundaryScanStop = 1.0;

void check_q_grid(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("q grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] <= 1.0)) {
      throw DomainError("q grid value " + std::to_string(grid[i]) + " outside (0, 1]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("q grid must be strictly increasing");
    }
  }
}

void check_omega_grid(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("omega grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw DomainError("omega grid value " + std::to_string(grid[i]) + " is not positive");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("omega grid must be strictly increasing");
    }
  }
}

OttoCycleSpec work_engine(double q_a, double q_c, double t_hot, double t_cold, double omega_a,
                          double omega_c, double tail_tol) {
  OttoCycleSpec spec{t_hot, t_cold, OscillatorParams(omega_a, q_a),
                     OscillatorParams(omega_c, q_c), tail_tol};
  validate(spec);
  return spec;
}

SweepTable make_table(std::vector<std::string> names, std::span<const double> grid,
                      std::span<const OttoCycleSpec> specs, unsigned jobs) {
  SweepTable table{std::move(names), evaluate_all(specs, jobs)};
  for (std::size_t i = 0; i < grid.size(); ++i) table.rows[i].values = {grid[i]};
  return table;
}

double objective_value(const OttoCycleSpec& spec, Objective objective) {
  constexpr double kMissing = -std::numeric_limits<double>::infinity();
  try {
    const CycleResult r = evaluate_cycle(spec);
    if (objective == Objective::work) return r.work;
    return r.efficiency.value_or(kMissing);
  } catch (const Error&) {
    return kMissing;
  }
}

}  // namespace

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw DomainError("grid step must be positive, got " + std::to_string(step));
  }
  if (!(stop >= start)) {
    throw DomainError("grid stop " + std::to_string(stop) + " is below start " +
                      std::to_string(start));
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 10'000'000) throw ResourceError("grid has more than 1e7 points");
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    double x = start + static_cast<double>(i) * step;
    // Snap to 12 decimals so 0.01 + 369 * 0.001 is stored (and printed) as 0.379.
    if (std::abs(x) < 1e3) x = std::round(x * 1e12) / 1e12;
    grid[i] = x;
  }
  if (std::abs(grid.back() - stop) <= 1e-9 * step) grid.back() = stop;
  return grid;
}

std::vector<SweepRow> evaluate_all(std::span<const OttoCycleSpec> specs, unsigned jobs) {
  std::vector<SweepRow> rows(specs.size());
  parallel_for(specs.size(), jobs, [&](std::size_t i) {
    try {
      rows[i].result = evaluate_cycle(specs[i]);
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

SweepTable sweep_qa(double q_c, double t_hot, double t_cold, double omega,
                    std::span<const double> grid, const SweepOptions& options) {
  check_q_grid(grid);
  std::vector<OttoCycleSpec> specs;
  specs.reserve(grid.size());
  for (double q_a : grid) {
    specs.push_back(work_engine(q_a, q_c, t_hot, t_cold, omega, omega, options.tail_tol));
  }
  return make_table({"q_A"}, grid, specs, options.jobs);
}

SweepTable efficiency_curve(double q_c, double t_hot, double t_cold, double omega,
                            std::span<const double> grid, const SweepOptions& options) {
  SweepTable table = sweep_qa(q_c, t_hot, t_cold, omega, grid, options);
  std::erase_if(table.rows, [](const SweepRow& row) {
    return row.result.has_value() && !row.result->positive_work;
  });
  return table;
}

double positive_work_boundary(double q_c, double t_hot, double t_cold, double omega, double tol,
                              const SweepOptions& options) {
  if (!(tol > 0.0)) throw DomainError("boundary tolerance must be positive");
  const std::vector<double> grid = make_grid(kBoundaryScanStart, kBoundaryScanStop, kDefaultQStep);
  const SweepTable scan = sweep_qa(q_c, t_hot, t_cold, omega, grid, options);

  for (std::size_t i = 1; i < scan.rows.size(); ++i) {
    const SweepRow& below = scan.rows[i - 1];
    const SweepRow& above = scan.rows[i];
    if (!below.result || !above.result) continue;
    if (below.result->work > 0.0 || above.result->work <= 0.0) continue;

    const auto work_at = [&](double q_a) {
      return evaluate_cycle(work_engine(q_a, q_c, t_hot, t_cold, omega, omega, options.tail_tol))
          .work;
    };
    const auto [lo, hi] = bisect_upward_crossing(work_at, grid[i - 1], grid[i], tol);
    return 0.5 * (lo + hi);
  }
  throw NoSignChangeError("work does not change sign from <= 0 to > 0 for q_A in [" +
                          std::to_string(kBoundaryScanStart) + ", " +
                          std::to_string(kBoundaryScanStop) + "]");
}

OptimumReport optimize_q(const OptimizeRequest& request) {
  if (!(request.grid_step > 1e-4 && request.grid_step < 0.1)) {
    throw DomainError("grid step must lie in (1e-4, 0.1), got " +
                      std::to_string(request.grid_step));
  }
  if (!(request.refine_tol > 0.0)) throw DomainError("refinement tolerance must be positive");
  const double start = request.grid_start.value_or(request.grid_step);
  const double stop = request.grid_stop.value_or(1.0);
  const std::vector<double> grid = make_grid(start, stop, request.grid_step);
  check_q_grid(grid);

  const auto spec_at = [&](double q) {
    const double q_a = request.free == FreeParameter::q_a ? q : request.fixed_q;
    const double q_c = request.free == FreeParameter::q_c ? q : request.fixed_q;
    return work_engine(q_a, q_c, request.t_hot, request.t_cold, request.omega_a, request.omega_c,
                       request.options.tail_tol);
  };
  // Validates the fixed parameters before any work is spent on the scan.
  (void)spec_at(grid.front());

  const auto objective = [&](double q) { return objective_value(spec_at(q), request.objective); };

  std::vector<double> values(grid.size());
  parallel_for(grid.size(), request.options.jobs,
               [&](std::size_t i) { values[i] = objective(grid[i]); });

  const auto best = std::max_element(values.begin(), values.end());
  if (!std::isfinite(*best)) {
    if (request.objective == Objective::efficiency) {
      throw EmptyDomainError("no grid point has positive work");
    }
    throw ConvergenceError("no grid point could be evaluated");
  }
  const auto i = static_cast<std::size_t>(best - values.begin());
  OptimumReport report{grid[i], *best,     request.objective,
                       grid[i], grid[i],   request.refine_tol};
  if (grid.size() == 1) return report;

  const double lo = grid[i == 0 ? 0 : i - 1];
  const double hi = grid[std::min(i + 1, grid.size() - 1)];
  const GoldenSectionResult refined =
      golden_section_maximize(objective, lo, hi, request.refine_tol);

  double arg = refined.x;
  double value = refined.fx;
  for (double endpoint : {refined.lo, refined.hi}) {
    const double f = objective(endpoint);
    if (f > value) {
      arg = endpoint;
      value = f;
    }
  }
  if (value >= *best) {
    report.argmax = arg;
    report.max_value = value;
    report.bracket_lo = refined.lo;
    report.bracket_hi = refined.hi;
  }
  return report;
}

SweepTable sweep_omega(const SweepOmegaRequest& request, const SweepOptions& options) {
  check_omega_grid(request.grid);
  std::vector<OttoCycleSpec> specs;
  specs.reserve(request.grid.size());
  for (double omega : request.grid) {
    const double omega_c = request.omega_c.value_or(omega);
    specs.push_back(work_engine(request.q_a, request.q_c, request.t_hot, request.t_cold, omega,
                                omega_c, options.tail_tol));
  }
  return make_table({request.omega_c ? "omega_A" : "omega"}, request.grid, specs, options.jobs);
}

}  // namespace qotto
