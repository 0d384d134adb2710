#pragma once

#include <cstddef>
#include <vector>

namespace qotto {

// Hard cap on the highest level index any routine will materialize.
inline constexpr std::size_t kMaxLevels = 100'000;

// Below this |ln q| the oscillator is treated as exactly harmonic.
inline constexpr double kHarmonicLogQ = 1e-9;

// Frequency and deformation of the working substance (hbar = k_B = 1).
// Constructing one validates omega > 0 and 0 < q <= 1.
class OscillatorParams {
 public:
  OscillatorParams(double omega, double q);

  double omega() const { return omega_; }
  double q() const { return q_; }
  // ln q, always <= 0 in the admitted domain.
  double log_q() const { return log_q_; }
  bool harmonic() const { return -log_q_ < kHarmonicLogQ; }

  friend bool operator==(const OscillatorParams&, const OscillatorParams&) = default;

 private:
  double omega_;
  double q_;
  double log_q_;
};

// Deformed integer [n] = (q^n - q^-n) / (q - q^-1); exactly n at q = 1.
double q_number(unsigned n, double q);

// E_n = (omega/2)([n] + [n+1]), evaluated through the equivalent closed form
// (omega/2) sinh(r(n+1/2)) / sinh(r/2) with r = ln q and the larger exponent
// factored out. Returns +inf only when the true value exceeds DBL_MAX.
double energy(unsigned n, const OscillatorParams& params);

// ln E_n; finite for every n, even where energy() overflows.
double log_energy(unsigned n, const OscillatorParams& params);

// E_0 ... E_{n_max}. Throws ResourceError when n_max > kMaxLevels.
std::vector<double> energy_ladder(const OscillatorParams& params, std::size_t n_max);

}  // namespace qotto
