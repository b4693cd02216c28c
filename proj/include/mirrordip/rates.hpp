#ifndef MIRRORDIP_RATES_HPP
#define MIRRORDIP_RATES_HPP

#include "mirrordip/geometry.hpp"

// Cross-coupling rate Gamma_ab between the two atoms, computed four ways:
//
//   gamma_ab_closed      closed-form antiderivative (fast path, larger xi)
//   gamma_ab_series      Maclaurin series in xi (small-xi path; the closed
//                        form loses digits to cancellation below xi ~ 0.5)
//   gamma_ab_quadrature  direct numerical integration of the 1-D integral
//                        (primary oracle)
//   gamma_ab_angular     numerical double integral over emission direction
//                        with the explicit polarization sum (independent
//                        second oracle)
//
// All four evaluate the same quantity
//   Gamma_ab = (3/16) t_a r_b Gfree *
//              Int_0^1 du e^{i xi u} [2 d1a d1b (1-u^2) + (d2a d2b + d3a d3b)(1+u^2)]
// and must agree; the test suite enforces pairwise agreement to 1e-8.
// Everything is in units of the free-space decay rate (Gfree = 1, k0 = 1).

namespace mirrordip {

inline constexpr double kGammaFree = 1.0;

// Branch point of the automatic dispatcher; xi exactly at the threshold
// takes the series branch.
inline constexpr double kSeriesSwitchXi = 0.5;

ComplexRate gamma_ab_closed(const GeometryConfig& cfg);
ComplexRate gamma_ab_series(const GeometryConfig& cfg);

// Series below (or at) kSeriesSwitchXi, closed form above.
ComplexRate gamma_ab(const GeometryConfig& cfg);

ComplexRate gamma_ab_quadrature(const GeometryConfig& cfg, double tol = 1e-10);
ComplexRate gamma_ab_angular(const GeometryConfig& cfg, double tol = 1e-10);

struct CollectiveRates {
  double gamma_plus;   // decay rate of the symmetric one-excitation state
  double gamma_minus;  // decay rate of the antisymmetric one-excitation state
};

// Gamma_pm = Gfree +- Re(gamma_ab). Throws UnphysicalRateError when
// |Re(gamma_ab)| >= Gfree, which cannot arise from a valid geometry but
// guards hand-entered rates.
CollectiveRates collective_rates(ComplexRate gamma_ab);

// Interaction-induced level shift: Im(gamma_ab).
double level_shift(ComplexRate gamma_ab);

}  // namespace mirrordip

#endif  // MIRRORDIP_RATES_HPP
