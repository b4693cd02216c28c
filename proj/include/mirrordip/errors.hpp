#ifndef MIRRORDIP_ERRORS_HPP
#define MIRRORDIP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mirrordip {

// Thrown when a domain type is constructed with values that violate one of
// its invariants. The message names the violated relation.
class ConstraintViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a decay rate leaves the physical range (e.g. |Re| >= 1 in
// units of the free-space rate, which would make one collective rate <= 0).
class UnphysicalRateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown when adaptive integration exhausts its evaluation budget before
// reaching the requested tolerance. Carries the achieved error estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double requested, double achieved)
      : std::runtime_error(what), requested_tol(requested), achieved_error(achieved) {}
  double requested_tol;
  double achieved_error;
};

// Thrown by the time evolution routines on unusable time grids (non-monotone
// steps, step-size underflow).
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by ratio_crossing_time when the emission-rate ratio never returns
// to 1 (interaction-free case).
class NoCrossingError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace mirrordip

#endif  // MIRRORDIP_ERRORS_HPP
