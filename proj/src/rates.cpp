#include "mirrordip/rates.hpp"

#include <cmath>
#include <numbers>

#include "mirrordip/errors.hpp"
#include "mirrordip/quadrature.hpp"

namespace mirrordip {

namespace {

constexpr Complex kI{0.0, 1.0};

struct DipoleProducts {
  double normal;      // d1a * d1b, components along the mirror normal
  double transverse;  // d2a * d2b + d3a * d3b, in-plane components
};

DipoleProducts dipole_products(const GeometryConfig& cfg) {
  const auto& a = cfg.dipole_a;
  const auto& b = cfg.dipole_b;
  return {a.d1() * b.d1(), a.d2() * b.d2() + a.d3() * b.d3()};
}

Complex prefactor(const GeometryConfig& cfg) {
  return (3.0 / 16.0) * coupling_prefactor(cfg.mirror) * kGammaFree;
}

void require_positive_xi(const GeometryConfig& cfg) {
  if (!(cfg.xi > 0.0)) {
    throw std::domain_error("gamma_ab: xi must be positive");
  }
}

}  // namespace

ComplexRate gamma_ab_closed(const GeometryConfig& cfg) {
  require_positive_xi(cfg);
  const auto [P, D] = dipole_products(cfg);
  const Complex s = kI * cfg.xi;
  const Complex es = std::exp(s);
  // Antiderivatives of e^{su} and u^2 e^{su} over [0, 1].
  const Complex i0 = (es - 1.0) / s;
  const Complex i2 = es * (1.0 / s - 2.0 / (s * s) + 2.0 / (s * s * s)) - 2.0 / (s * s * s);
  return prefactor(cfg) * (2.0 * P * (i0 - i2) + D * (i0 + i2));
}

ComplexRate gamma_ab_series(const GeometryConfig& cfg) {
  require_positive_xi(cfg);
  const auto [P, D] = dipole_products(cfg);
  // Term-by-term integration of the expanded exponential:
  //   Int u^n (1-u^2) du = 2/((n+1)(n+3)),  Int u^n (1+u^2) du = (2n+4)/((n+1)(n+3))
  // giving sum_n (i xi)^n / n! * (4P + 2D(n+2)) / ((n+1)(n+3)).
  Complex sum = 0.0;
  Complex power = 1.0;  // (i xi)^n / n!
  int settled = 0;
  for (int n = 0; n <= 80; ++n) {
    const double coeff = (4.0 * P + 2.0 * D * (n + 2)) / ((n + 1.0) * (n + 3.0));
    sum += power * coeff;
    const double bound =
        std::abs(power) * (4.0 * std::abs(P) + 2.0 * std::abs(D) * (n + 2)) /
        ((n + 1.0) * (n + 3.0));
    settled = (bound <= 1e-17 * std::max(1.0, std::abs(sum))) ? settled + 1 : 0;
    if (settled >= 2) break;
    power *= kI * cfg.xi / (n + 1.0);
  }
  return prefactor(cfg) * sum;
}

ComplexRate gamma_ab(const GeometryConfig& cfg) {
  require_positive_xi(cfg);
  return cfg.xi <= kSeriesSwitchXi ? gamma_ab_series(cfg) : gamma_ab_closed(cfg);
}

ComplexRate gamma_ab_quadrature(const GeometryConfig& cfg, double tol) {
  require_positive_xi(cfg);
  const auto [P, D] = dipole_products(cfg);
  const double xi = cfg.xi;
  const auto integrand = [=](double u) {
    return std::exp(kI * (xi * u)) * (2.0 * P * (1.0 - u * u) + D * (1.0 + u * u));
  };
  QuadratureOptions opt;
  opt.tol = tol;
  const QuadratureResult res = integrate_adaptive(integrand, 0.0, 1.0, opt);
  return prefactor(cfg) * res.value;
}

ComplexRate gamma_ab_angular(const GeometryConfig& cfg, double tol) {
  require_positive_xi(cfg);
  const auto& da = cfg.dipole_a;
  const auto& db = cfg.dipole_b;
  const double xi = cfg.xi;

  // Polarization sum at fixed emission direction (theta, phi):
  //   e1 = (0, sin phi, -cos phi)
  //   e2 = (sin theta, -cos phi cos theta, -sin phi cos theta)
  const auto polarization_sum = [&](double ct, double st, double phi) {
    const double cp = std::cos(phi);
    const double sp = std::sin(phi);
    const double a1 = da.d2() * sp - da.d3() * cp;
    const double b1 = db.d2() * sp - db.d3() * cp;
    const double a2 = da.d1() * st - (da.d2() * cp + da.d3() * sp) * ct;
    const double b2 = db.d1() * st - (db.d2() * cp + db.d3() * sp) * ct;
    return a1 * b1 + a2 * b2;
  };

  // The phi integrand is a trigonometric polynomial of degree 2, so the
  // uniform periodic rule below is exact.
  constexpr int kPhiPoints = 16;
  const auto phi_integral = [&](double ct, double st) {
    double acc = 0.0;
    for (int j = 0; j < kPhiPoints; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / kPhiPoints;
      acc += polarization_sum(ct, st, phi);
    }
    return acc * (2.0 * std::numbers::pi / kPhiPoints);
  };

  const auto outer = [&](double theta) {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    return std::exp(-kI * (xi * ct)) * st * phi_integral(ct, st);
  };

  QuadratureOptions opt;
  opt.tol = tol;
  const QuadratureResult res =
      integrate_adaptive(outer, std::numbers::pi / 2.0, std::numbers::pi, opt);
  return (3.0 / (16.0 * std::numbers::pi)) * coupling_prefactor(cfg.mirror) *
         kGammaFree * res.value;
}

CollectiveRates collective_rates(ComplexRate gamma_ab) {
  const double re = gamma_ab.real();
  if (!std::isfinite(re) || std::abs(re) >= kGammaFree) {
    throw UnphysicalRateError(
        "collective_rates: |Re(gamma_ab)| must be < Gamma_free");
  }
  return {kGammaFree + re, kGammaFree - re};
}

double level_shift(ComplexRate gamma_ab) { return gamma_ab.imag(); }

}  // namespace mirrordip
