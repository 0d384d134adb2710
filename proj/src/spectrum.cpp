#include "qotto/spectrum.hpp"

#include <cmath>
#include <string>

#include "qotto/errors.hpp"

namespace qotto {

namespace {

void check_q(double q) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw DomainError("deformation q must lie in (0, 1], got " + std::to_string(q));
  }
}

// sinh(a) / sinh(b) for 0 < b <= a, with e^a factored out of both terms.
double sinh_ratio(double a, double b) {
  return std::exp(a - b) * (std::expm1(-2.0 * a) / std::expm1(-2.0 * b));
}

double log_sinh_ratio(double a, double b) {
  return (a - b) + std::log(-std::expm1(-2.0 * a)) - std::log(-std::expm1(-2.0 * b));
}

}  // namespace

OscillatorParams::OscillatorParams(double omega, double q) : omega_(omega), q_(q) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("frequency omega must be positive and finite, got " + std::to_string(omega));
  }
  check_q(q);
  log_q_ = std::log(q);
}

double q_number(unsigned n, double q) {
  check_q(q);
  if (n == 0) return 0.0;
  if (q == 1.0) return static_cast<double>(n);
  const double r = -std::log(q);
  return sinh_ratio(r * n, r);
}

double energy(unsigned n, const OscillatorParams& params) {
  const double level = static_cast<double>(n) + 0.5;
  if (params.harmonic()) return params.omega() * level;
  const double r = -params.log_q();
  return 0.5 * params.omega() * sinh_ratio(r * level, 0.5 * r);
}

double log_energy(unsigned n, const OscillatorParams& params) {
  const double level = static_cast<double>(n) + 0.5;
  if (params.harmonic()) return std::log(params.omega() * level);
  const double r = -params.log_q();
  return std::log(0.5 * params.omega()) + log_sinh_ratio(r * level, 0.5 * r);
}

std::vector<double> energy_ladder(const OscillatorParams& params, std::size_t n_max) {
  if (n_max > kMaxLevels) {
    throw ResourceError("n_max " + std::to_string(n_max) + " exceeds the level cap " +
                        std::to_string(kMaxLevels));
  }
  std::vector<double> ladder(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) ladder[n] = energy(static_cast<unsigned>(n), params);
  return ladder;
}

}  // namespace qotto
