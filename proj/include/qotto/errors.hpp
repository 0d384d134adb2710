#pragma once

#include <stdexcept>
#include <string>

namespace qotto {

// Base of every error raised by the library. The CLI maps DomainError to
// exit code 3 and every other Error to exit code 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid physical parameters (q outside (0, 1], non-positive temperature...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A requested size exceeds the hard level cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A Boltzmann or work series could not be certified within the level cap,
// or provably diverges.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// positive_work_boundary found no upward sign change of W.
class NoSignChangeError : public Error {
 public:
  using Error::Error;
};

// optimize_q with the efficiency objective saw no positive-work grid point.
class EmptyDomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace qotto
