#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "oracle/brute_force.hpp"
#include "qotto/cycle.hpp"
#include "qotto/errors.hpp"

using namespace qotto;

namespace {

OttoCycleSpec engine(double q_a, double q_c, double t_hot, double t_cold, double omega_a = 1.0,
                     double omega_c = 1.0) {
  return {t_hot, t_cold, OscillatorParams(omega_a, q_a), OscillatorParams(omega_c, q_c)};
}

struct RandomSpecs {
  std::mt19937_64 rng;
  explicit RandomSpecs(unsigned seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  OttoCycleSpec next(bool harmonic) {
    double t1 = uniform(0.05, 10.0);
    double t2 = uniform(0.05, 10.0);
    if (t1 < t2) std::swap(t1, t2);
    if (harmonic) return engine(1.0, 1.0, t1, t2, uniform(0.1, 5.0), uniform(0.1, 5.0));
    const double omega = uniform(0.1, 5.0);
    return engine(uniform(0.05, 1.0), uniform(0.05, 1.0), t1, t2, omega, omega);
  }
};

// From tests/oracle/brute_force.py.
constexpr double kWork = 0.023674418898296249124;
constexpr double kHeatIn = 0.07594967900973001938;
constexpr double kHeatOut = -0.052275260111433770256;
constexpr double kEfficiency = 0.31171190197213718674;

}  // namespace

TEST_CASE("identical spectra give zero work") {
  for (double q : {0.2, 0.5, 1.0}) {
    const CycleResult r = evaluate_cycle(engine(q, q, 0.5, 0.1));
    CHECK(r.work == 0.0);
    CHECK(r.heat_in > 0.0);
    CHECK_FALSE(r.positive_work);
    CHECK_FALSE(r.efficiency.has_value());
    CHECK(r.carnot == doctest::Approx(0.8));
  }
}

TEST_CASE("statistical-mutation engine against the fixed-depth oracle") {
  const CycleResult r = evaluate_cycle(engine(0.4, 1.0, 0.5, 0.1));
  CHECK(r.work == doctest::Approx(kWork).epsilon(1e-12));
  CHECK(r.heat_in == doctest::Approx(kHeatIn).epsilon(1e-12));
  CHECK(r.heat_out == doctest::Approx(kHeatOut).epsilon(1e-12));
  REQUIRE(r.efficiency.has_value());
  CHECK(*r.efficiency == doctest::Approx(kEfficiency).epsilon(1e-12));
  CHECK(r.positive_work);

  const oracle::Cycle live = oracle::cycle(0.4L, 1.0L, 0.5L, 0.1L, 1.0L, 1.0L, 1000);
  CHECK(r.work == doctest::Approx(static_cast<double>(live.work)).epsilon(1e-12));
}

TEST_CASE("harmonic frequency-modulated engine matches the closed form") {
  const CycleResult r = evaluate_cycle(engine(1.0, 1.0, 0.5, 0.1, 1.0, 0.5));
  const double expected = oracle::harmonic_otto_work(1.0, 0.5, 0.5, 0.1);
  CHECK(r.work == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("per-level diagnostics") {
  SUBCASE("sums reproduce the cycle") {
    for (double q_a : {0.1, 0.379, 0.7}) {
      const OttoCycleSpec spec = engine(q_a, 1.0, 0.5, 0.1);
      const auto rows = per_level_diagnostics(spec);
      double w = 0.0;
      double dp = 0.0;
      for (const auto& row : rows) {
        w += row.work;
        dp += row.population_change;
      }
      CHECK(std::fabs(w - evaluate_cycle(spec).work) < 1e-12);
      CHECK(std::fabs(dp) < 1e-12);
    }
  }
  SUBCASE("equal spectra") {
    for (const auto& row : per_level_diagnostics(engine(0.6, 0.6, 0.5, 0.1))) {
      CHECK(row.energy_change == 0.0);
    }
  }
  SUBCASE("equal temperatures still conserve probability") {
    const auto rows = per_level_diagnostics(engine(0.3, 0.9, 0.4, 0.4));
    double dp = 0.0;
    bool any_nonzero = false;
    for (const auto& row : rows) {
      dp += row.population_change;
      any_nonzero = any_nonzero || row.population_change != 0.0;
    }
    CHECK(any_nonzero);
    CHECK(std::fabs(dp) < 1e-12);
  }
  SUBCASE("sign structure of the statistical-mutation engine") {
    for (double q_a : {0.2, 0.4, 0.6, 0.8}) {
      const auto rows = per_level_diagnostics(engine(q_a, 1.0, 0.5, 0.1), 5);
      REQUIRE(rows.size() >= 6);
      CHECK(rows[0].population_change < 0.0);
      CHECK(rows[1].population_change > 0.0);
      CHECK(rows[0].energy_change == doctest::Approx(0.0).epsilon(1e-15));
      for (std::size_t n = 1; n <= 5; ++n) CHECK(rows[n].energy_change > 0.0);
    }
  }
  SUBCASE("minimum level count is honoured") {
    CHECK(per_level_diagnostics(engine(0.4, 1.0, 0.5, 0.1), 25).size() == 26);
  }
}

TEST_CASE("adiabats carry populations unchanged") {
  RandomSpecs draws(5);
  for (int trial = 0; trial < 50; ++trial) {
    OttoCycleSpec spec = draws.next(false);
    std::size_t depth = 0;
    try {
      depth = cycle_depth(spec);
    } catch (const ConvergenceError&) {
      continue;
    }
    const ThermalState b = thermal_state_at_depth(spec.params_a, spec.t_hot, depth);
    const ThermalState d = thermal_state_at_depth(spec.params_c, spec.t_cold, depth);
    const auto rows = per_level_diagnostics(spec);
    REQUIRE(rows.size() == depth + 1);
    for (std::size_t n = 0; n <= depth; ++n) {
      // P(C) is P(B) and P(A) is P(D) bit for bit; the entropy at each pair is
      // therefore the same number.
      CHECK(rows[n].population_change == b.populations[n] - d.populations[n]);
    }
  }
}

TEST_CASE("first law, Carnot bound and harmonic oracle on random cycles") {
  RandomSpecs draws(2024);
  int evaluated = 0;
  int divergent = 0;
  int beyond_range = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const OttoCycleSpec spec = draws.next(false);
    try {
      const CycleResult r = evaluate_cycle(spec);
      ++evaluated;
      if (std::isinf(r.work)) {
        // Past the double range; the heat that overflowed carries the sign.
        ++beyond_range;
        CHECK((std::isinf(r.heat_in) || std::isinf(r.heat_out)));
        CHECK(r.work == r.heat_in + r.heat_out);
      } else {
        const double scale = std::max(1.0, std::fabs(r.heat_in) + std::fabs(r.heat_out));
        CHECK(std::fabs(r.work - (r.heat_in + r.heat_out)) < 1e-10 * scale);
      }
      if (r.positive_work) {
        REQUIRE(r.efficiency.has_value());
        CHECK(*r.efficiency > 0.0);
        CHECK(*r.efficiency <= r.carnot + 1e-9);
      } else {
        CHECK_FALSE(r.efficiency.has_value());
      }
    } catch (const ConvergenceError&) {
      ++divergent;
    }
  }
  CHECK(evaluated + divergent == 1000);
  CHECK(evaluated > 900);
  MESSAGE("divergent: " << divergent << ", beyond double range: " << beyond_range);

  for (int trial = 0; trial < 1000; ++trial) {
    const OttoCycleSpec spec = draws.next(true);
    const double expected = oracle::harmonic_otto_work(spec.params_a.omega(), spec.params_c.omega(),
                                                       spec.t_hot, spec.t_cold);
    const double w = evaluate_cycle(spec).work;
    CHECK_MESSAGE(std::fabs(w - expected) <= 1e-8 * std::fabs(expected),
                  "trial " << trial << " W=" << w << " expected=" << expected);
  }
}

TEST_CASE("deep levels past the double range") {
  // Oracle: tests/oracle/brute_force.py at depth 4000.
  const CycleResult r = evaluate_cycle(engine(0.997, 0.6, 100.0, 0.1, 1.0, 1.0));
  CHECK(r.work == doctest::Approx(-4.0602833180440849962e+267).epsilon(1e-11));
  CHECK(r.heat_in == doctest::Approx(90.122069632121194999).epsilon(1e-12));
  CHECK_FALSE(r.positive_work);
  CHECK_FALSE(r.efficiency.has_value());

  // Here even the heats exceed the double range; only their signs survive.
  const CycleResult huge = evaluate_cycle(engine(0.999, 0.6, 100.0, 0.1, 1.0, 1.0));
  CHECK(huge.work == -std::numeric_limits<double>::infinity());
  CHECK(huge.heat_out == -std::numeric_limits<double>::infinity());
  CHECK(std::isfinite(huge.heat_in));
  CHECK(huge.heat_in > 0.0);
}

TEST_CASE("divergent work series is reported, not truncated") {
  // |ln 0.4| > omega/T_c = 0.5: sum_n E_n(A) P_n(A) has no finite value.
  try {
    evaluate_cycle(engine(0.4, 1.0, 1.0, 0.1, 0.05, 0.05));
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::string(e.what()).find("work sum") != std::string::npos);
  }
  // Just inside convergence the slow tail is summed to certification.
  const CycleResult r = evaluate_cycle(engine(0.4, 1.0, 1.0, 0.1, 0.1, 0.1));
  CHECK(r.n_max_used > 100);
  CHECK(r.work == doctest::Approx(-0.31248629318285180425).epsilon(1e-10));
}

TEST_CASE("cycle errors name the failing stage") {
  CHECK_THROWS_AS(evaluate_cycle(engine(0.5, 0.5, 0.1, 0.5)), DomainError);
  CHECK_THROWS_AS(evaluate_cycle(engine(0.5, 0.5, 0.5, 0.0)), DomainError);
  OttoCycleSpec bad_tol = engine(0.5, 0.5, 0.5, 0.1);
  bad_tol.tail_tol = 2.0;
  CHECK_THROWS_AS(evaluate_cycle(bad_tol), DomainError);

  try {
    evaluate_cycle(engine(1.0, 1.0, 1e5, 0.1, 0.1, 0.1));
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::string(e.what()).find("hot isochore") != std::string::npos);
  }
}
