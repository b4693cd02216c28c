#include "mirrordip/experiments.hpp"

#include <cmath>

#include "mirrordip/dynamics.hpp"
#include "mirrordip/errors.hpp"

namespace mirrordip {

void SweepSpec::validate() const {
  if (!(xi_min > 0.0) || !(xi_max > xi_min)) {
    throw ConstraintViolation("sweep: need 0 < xi_min < xi_max");
  }
  if (n_points < 2) {
    throw ConstraintViolation("sweep: n_points must be >= 2");
  }
  if (orientation_list.empty()) {
    throw ConstraintViolation("sweep: orientation_list must be non-empty");
  }
  for (const double c : orientation_list) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw ConstraintViolation("sweep: orientations must lie in [0, 1]");
    }
  }
  if (!(coupling >= 0.0 && coupling <= 1.0)) {
    throw ConstraintViolation("sweep: coupling must lie in [0, 1]");
  }
}

void LifetimeSpec::validate() const {
  if (p_list.empty()) {
    throw ConstraintViolation("lifetime: p_list must be non-empty");
  }
  for (const double p : p_list) {
    if (!(p > 0.0 && p < 1.0)) {
      throw ConstraintViolation("lifetime: each p must lie in (0, 1)");
    }
  }
  if (!(re_gamma > -1.0 && re_gamma < 1.0)) {
    throw ConstraintViolation("lifetime: re_gamma must lie in (-1, 1)");
  }
  if (!(t_max > 0.0)) {
    throw ConstraintViolation("lifetime: t_max must be positive");
  }
  if (n_steps < 1) {
    throw ConstraintViolation("lifetime: n_steps must be >= 1");
  }
}

std::vector<double> make_grid(double lo, double hi, int n, Spacing spacing) {
  if (n < 2) {
    throw ConstraintViolation("make_grid: need at least 2 points");
  }
  if (spacing == Spacing::Log && !(lo > 0.0)) {
    throw ConstraintViolation("make_grid: log spacing needs lo > 0");
  }
  std::vector<double> grid(n);
  if (spacing == Spacing::Linear) {
    const double step = (hi - lo) / (n - 1);
    for (int k = 0; k < n; ++k) grid[k] = lo + step * k;
  } else {
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / (n - 1);
    for (int k = 0; k < n; ++k) grid[k] = std::exp(log_lo + step * k);
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

Table sweep_xi(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> xi_grid =
      make_grid(spec.xi_min, spec.xi_max, spec.n_points, spec.spacing);
  const MirrorSpec mirror = mirror_from_coupling(spec.coupling);

  Table table;
  auto& col_xi = table.add_column("xi");
  auto& col_orient = table.add_column("orientation");
  auto& col_re = table.add_column("re_gamma_ab");
  auto& col_delta = table.add_column("delta_mir");

  for (const double xi : xi_grid) {
    for (const double c : spec.orientation_list) {
      const DipoleOrientation d(c, std::sqrt(1.0 - c * c), 0.0);
      const GeometryConfig cfg(xi, d, d, mirror);
      ComplexRate g;
      switch (spec.backend) {
        case RateBackend::Quadrature:
          g = gamma_ab_quadrature(cfg);
          break;
        case RateBackend::Angular:
          g = gamma_ab_angular(cfg);
          break;
        case RateBackend::Auto:
          g = gamma_ab(cfg);
          break;
      }
      col_xi.push_back(xi);
      col_orient.push_back(c);
      col_re.push_back(g.real());
      col_delta.push_back(level_shift(g));
    }
  }
  return table;
}

Table lifetime_curves(const LifetimeSpec& spec) {
  spec.validate();
  const std::vector<double> t_grid =
      make_grid(0.0, spec.t_max, spec.n_steps + 1, Spacing::Linear);
  const double r = spec.re_gamma;

  Table table;
  auto& col_t = table.add_column("t");
  auto& col_p = table.add_column("p");
  auto& col_i = table.add_column("I");
  auto& col_i0 = table.add_column("I0");
  auto& col_ratio = table.add_column("ratio");

  for (const double t : t_grid) {
    const double ratio = std::cosh(r * t) - (r / kGammaFree) * std::sinh(r * t);
    for (const double p : spec.p_list) {
      col_t.push_back(t);
      col_p.push_back(p);
      col_i.push_back(emission_rate(p, ComplexRate{r, 0.0}, t));
      col_i0.push_back(emission_rate(p, ComplexRate{0.0, 0.0}, t));
      col_ratio.push_back(ratio);
    }
  }
  return table;
}

double ratio_crossing_time(double re_gamma) {
  if (std::abs(re_gamma) >= kGammaFree) {
    throw UnphysicalRateError("ratio_crossing_time: need |re_gamma| < Gamma_free");
  }
  if (re_gamma == 0.0) {
    throw NoCrossingError("ratio_crossing_time: ratio is identically 1 at re_gamma = 0");
  }
  return 2.0 * std::atanh(re_gamma / kGammaFree) / re_gamma;
}

}  // namespace mirrordip
