#include "mirrordip/geometry.hpp"

#include <cmath>

namespace mirrordip {

namespace {
constexpr double kStokesTol = 1e-12;
}

DipoleOrientation::DipoleOrientation(double d1, double d2, double d3) {
  const double norm = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ConstraintViolation(
        "DipoleOrientation: d1^2 + d2^2 + d3^2 must be positive and finite");
  }
  d1_ = d1 / norm;
  d2_ = d2 / norm;
  d3_ = d3 / norm;
  renorm_ = std::abs(norm - 1.0);
}

AsymmetricMirror::AsymmetricMirror(double r_a_in, double r_b_in)
    : r_a(r_a_in), r_b(r_b_in) {
  if (!(r_a >= 0.0 && r_a <= 1.0) || !(r_b >= 0.0 && r_b <= 1.0)) {
    throw ConstraintViolation("AsymmetricMirror: 0 <= r_i <= 1 violated");
  }
}

SymmetricMirror::SymmetricMirror(Complex r_a_in, Complex t_a_in, Complex r_b_in,
                                 Complex t_b_in)
    : r_a(r_a_in), t_a(t_a_in), r_b(r_b_in), t_b(t_b_in) {
  const double na = std::norm(r_a) + std::norm(t_a);
  const double nb = std::norm(r_b) + std::norm(t_b);
  if (std::abs(na - 1.0) > kStokesTol || std::abs(nb - 1.0) > kStokesTol) {
    throw ConstraintViolation("SymmetricMirror: |r_i|^2 + |t_i|^2 = 1 violated");
  }
  const Complex cross = std::conj(r_a) * t_b + std::conj(t_a) * r_b;
  if (std::abs(cross) > kStokesTol) {
    throw ConstraintViolation("SymmetricMirror: r_a* t_b + t_a* r_b = 0 violated");
  }
}

GeometryConfig::GeometryConfig(double xi_in, DipoleOrientation a, DipoleOrientation b,
                               MirrorSpec m)
    : xi(xi_in), dipole_a(a), dipole_b(b), mirror(std::move(m)) {
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    throw ConstraintViolation("GeometryConfig: xi > 0 violated");
  }
}

Complex coupling_prefactor(const MirrorSpec& mirror) {
  if (const auto* asym = std::get_if<AsymmetricMirror>(&mirror)) {
    return Complex(asym->t_a() * asym->r_b, 0.0);
  }
  const auto& sym = std::get<SymmetricMirror>(mirror);
  return std::conj(sym.r_a) * sym.t_b + std::conj(sym.t_a) * sym.r_b;
}

AsymmetricMirror mirror_from_coupling(double coupling) {
  if (!(coupling >= 0.0 && coupling <= 1.0)) {
    throw ConstraintViolation("coupling = t_a * r_b must lie in [0, 1]");
  }
  return AsymmetricMirror(1.0 - coupling, 1.0);
}

}  // namespace mirrordip
