#ifndef MIRRORDIP_EXPERIMENTS_HPP
#define MIRRORDIP_EXPERIMENTS_HPP

#include <vector>

#include "mirrordip/rates.hpp"
#include "mirrordip/table.hpp"

// Parameter sweeps and derived observables: the coupling versus effective
// distance, fluorescence-lifetime curves, and the crossing time of the
// emission-rate ratio. Pure functions of their specs; row order is fixed.

namespace mirrordip {

enum class Spacing { Linear, Log };

// Which rate evaluator backs a sweep. Auto is the series/closed-form
// dispatcher; the other two are the numerical oracles.
enum class RateBackend { Auto, Quadrature, Angular };

struct SweepSpec {
  double xi_min = 0.1;
  double xi_max = 20.0;
  int n_points = 400;
  Spacing spacing = Spacing::Log;
  // |d_hat . x_hat| values; both dipoles are set to (c, sqrt(1-c^2), 0).
  std::vector<double> orientation_list = {0.0, 0.5, 0.75, 1.0};
  double coupling = 0.5;  // t_a * r_b product
  RateBackend backend = RateBackend::Auto;

  void validate() const;  // throws ConstraintViolation
};

struct LifetimeSpec {
  std::vector<double> p_list = {0.05, 0.1, 0.2};
  double re_gamma = 0.05;  // Re(gamma_ab) in units of the free rate
  double t_max = 5.0;
  int n_steps = 500;  // grid has n_steps + 1 points including t = 0

  void validate() const;  // throws ConstraintViolation
};

// n evenly spaced points from lo to hi inclusive, on a linear or log axis.
std::vector<double> make_grid(double lo, double hi, int n, Spacing spacing);

// Columns {xi, orientation, re_gamma_ab, delta_mir}, one row per
// (xi, orientation), xi-major.
Table sweep_xi(const SweepSpec& spec = {});

// Columns {t, p, I, I0, ratio}, one row per (t, p), t-major. I0 is the
// emission rate of noninteracting atoms (re_gamma = 0) and
// ratio = I/I0 = cosh(R t) - R sinh(R t) is p-independent.
Table lifetime_curves(const LifetimeSpec& spec = {});

// Unique t* > 0 where the I/I0 ratio returns to 1:
// t* = 2 artanh(R) / R. Throws NoCrossingError for R = 0 and
// UnphysicalRateError for |R| >= 1.
double ratio_crossing_time(double re_gamma);

}  // namespace mirrordip

#endif  // MIRRORDIP_EXPERIMENTS_HPP
