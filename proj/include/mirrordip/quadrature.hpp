#ifndef MIRRORDIP_QUADRATURE_HPP
#define MIRRORDIP_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace mirrordip {

struct QuadratureOptions {
  // Accept when the accumulated error estimate of each component (real and
  // imaginary separately) is <= tol * max(1, |component value|).
  double tol = 1e-10;
  // Hard cap on integrand evaluations; exceeding it without reaching tol
  // raises ConvergenceError carrying the achieved estimate.
  long max_evals = 500000;
};

struct QuadratureResult {
  std::complex<double> value;
  double error_re = 0.0;  // accumulated estimate for the real part
  double error_im = 0.0;
  long evals = 0;
};

// Adaptive integration of a complex-valued function on [a, b]: each interval
// is scored with a fixed-order Gauss-Legendre rule, the embedded error
// estimate is |whole - (left half + right half)| per component, and intervals
// are halved until both components meet their share of the tolerance.
QuadratureResult integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                                    double a, double b,
                                    const QuadratureOptions& opt = {});

}  // namespace mirrordip

#endif  // MIRRORDIP_QUADRATURE_HPP
