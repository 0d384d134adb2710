#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracle/brute_force.hpp"
#include "qotto/errors.hpp"
#include "qotto/spectrum.hpp"

using namespace qotto;

namespace {

double rel_diff(double a, long double b) {
  return static_cast<double>(std::fabs((a - b) / b));
}

}  // namespace

TEST_CASE("q_number reference values") {
  CHECK(q_number(5, 1.0) == 5.0);
  CHECK(q_number(1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q_number(2, 0.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(q_number(0, 0.3) == 0.0);
}

TEST_CASE("q_number rejects q outside (0, 1]") {
  CHECK_THROWS_AS(q_number(1, 0.0), DomainError);
  CHECK_THROWS_AS(q_number(1, -0.5), DomainError);
  CHECK_THROWS_AS(q_number(1, 1.5), DomainError);
  CHECK_THROWS_AS(q_number(1, std::nan("")), DomainError);
}

TEST_CASE("OscillatorParams validates its fields") {
  CHECK_THROWS_AS(OscillatorParams(0.0, 0.5), DomainError);
  CHECK_THROWS_AS(OscillatorParams(-1.0, 0.5), DomainError);
  CHECK_THROWS_AS(OscillatorParams(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(OscillatorParams(1.0, 1.0001), DomainError);
  const OscillatorParams p(2.0, 0.5);
  CHECK(p.log_q() == doctest::Approx(std::log(0.5)));
  CHECK_FALSE(p.harmonic());
  CHECK(OscillatorParams(1.0, 1.0).harmonic());
  CHECK(OscillatorParams(1.0, 1.0 - 1e-10).harmonic());
}

TEST_CASE("energy reference values") {
  for (double q : {0.05, 0.1, 0.5, 0.9, 1.0}) {
    CHECK(energy(0, OscillatorParams(1.0, q)) == doctest::Approx(0.5).epsilon(1e-15));
  }
  CHECK(energy(3, OscillatorParams(1.0, 1.0)) == 3.5);
  CHECK(energy(1, OscillatorParams(1.0, 0.5)) == doctest::Approx(1.75).epsilon(1e-15));
}

TEST_CASE("energy_ladder") {
  const auto harmonic = energy_ladder(OscillatorParams(1.0, 1.0), 2);
  REQUIRE(harmonic.size() == 3);
  CHECK(harmonic[0] == 0.5);
  CHECK(harmonic[1] == 1.5);
  CHECK(harmonic[2] == 2.5);

  const auto deformed = energy_ladder(OscillatorParams(1.0, 0.5), 1);
  CHECK(deformed[0] == doctest::Approx(0.5));
  CHECK(deformed[1] == doctest::Approx(1.75));

  // Deformation pushes the levels above the harmonic ladder.
  const auto mild = energy_ladder(OscillatorParams(1.0, 0.9), 4);
  CHECK(mild[4] > 4.5);
  for (unsigned n = 1; n <= 4; ++n) CHECK(mild[n] > n + 0.5);

  CHECK_NOTHROW(energy_ladder(OscillatorParams(1.0, 1.0), kMaxLevels));
  CHECK_THROWS_AS(energy_ladder(OscillatorParams(1.0, 1.0), kMaxLevels + 1), ResourceError);
}

TEST_CASE("ladder is strictly increasing with growing gaps for q < 1") {
  for (double q : {0.05, 0.2, 0.5, 0.8, 0.95, 0.999}) {
    const auto e = energy_ladder(OscillatorParams(1.3, q), 60);
    for (std::size_t n = 1; n + 1 < e.size(); ++n) {
      if (!std::isfinite(e[n + 1])) break;
      CHECK(e[n] > e[n - 1]);
      CHECK(e[n + 1] - e[n] > e[n] - e[n - 1]);
    }
  }
  const auto h = energy_ladder(OscillatorParams(1.3, 1.0), 60);
  for (std::size_t n = 1; n < h.size(); ++n) CHECK(h[n] - h[n - 1] == doctest::Approx(1.3));
}

TEST_CASE("q_number is symmetric under q -> 1/q") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> q_dist(0.05, 0.999);
  for (int trial = 0; trial < 200; ++trial) {
    const long double q = q_dist(rng);
    const unsigned n = static_cast<unsigned>(rng() % 40);
    const long double forward = oracle::q_number(n, q);
    const long double inverted = oracle::q_number(n, 1.0L / q);
    CHECK(static_cast<double>(std::fabs(forward - inverted)) <=
          1e-12 * static_cast<double>(std::fabs(forward)) + 1e-15);
    if (n > 0) CHECK(rel_diff(q_number(n, static_cast<double>(q)), forward) < 1e-12);
  }
}

TEST_CASE("product and sinh forms of E_n agree") {
  for (double q : {0.1, 0.5, 0.9, 0.999}) {
    const OscillatorParams params(1.0, q);
    double worst = 0.0;
    for (unsigned n = 0; n <= 200; ++n) {
      worst = std::max(worst, rel_diff(energy(n, params), oracle::energy(n, q, 1.0L)));
    }
    CHECK_MESSAGE(worst < 1e-12, "q = " << q);
  }
}

TEST_CASE("E_n is continuous at q -> 1") {
  for (double q : {1.0 - 1e-10, 1.0 - 1e-8}) {
    const OscillatorParams params(0.7, q);
    for (unsigned n = 0; n <= 50; ++n) {
      const double harmonic = 0.7 * (n + 0.5);
      CHECK(std::fabs(energy(n, params) - harmonic) <= 1e-6 * harmonic);
    }
  }
}

TEST_CASE("large n|ln q| does not overflow early") {
  const double q = std::exp(-1.0);
  const OscillatorParams params(1.0, q);
  // n|r| = 700 is beyond where a raw sinh(r(n + 1/2)) loses to overflow.
  CHECK(rel_diff(energy(700, params), oracle::energy(700, q, 1.0L)) < 1e-12);
  CHECK(std::isfinite(energy(700, params)));

  const OscillatorParams steep(1.0, 0.01);
  CHECK(std::isinf(energy(500, steep)));
  CHECK(std::isfinite(log_energy(500, steep)));
  CHECK(log_energy(500, steep) ==
        doctest::Approx(static_cast<double>(std::log(oracle::energy(500, 0.01L, 1.0L))))
            .epsilon(1e-12));
  for (unsigned n : {0u, 3u, 40u}) {
    CHECK(log_energy(n, steep) == doctest::Approx(std::log(energy(n, steep))).epsilon(1e-13));
    CHECK(log_energy(n, OscillatorParams(2.0, 1.0)) == doctest::Approx(std::log(2.0 * (n + 0.5))));
  }
}
