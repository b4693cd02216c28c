#ifndef MIRRORDIP_GEOMETRY_HPP
#define MIRRORDIP_GEOMETRY_HPP

#include <complex>
#include <variant>

#include "mirrordip/errors.hpp"

// Domain types for the two-atom/mirror geometry. Conventions used throughout:
// the mirror occupies the x = 0 plane, atom a sits at x_a > 0, atom b at
// x_b < 0, and xi = k0 (x_a + |x_b|) is the dimensionless effective distance.
// All rates are expressed in units of the free-space decay rate.

namespace mirrordip {

using Complex = std::complex<double>;

// Cross-coupling coefficient between the two atoms, in units of the
// free-space decay rate: the real part modifies the collective decay rates,
// the imaginary part is the interaction-induced level shift.
using ComplexRate = Complex;

// Unit vector along a (real) atomic dipole moment. d1 is the component along
// the mirror normal x; d2, d3 span the mirror plane. Input vectors are
// normalized on construction; only real components are representable.
class DipoleOrientation {
 public:
  DipoleOrientation(double d1, double d2, double d3);

  double d1() const { return d1_; }
  double d2() const { return d2_; }
  double d3() const { return d3_; }

  double dot(const DipoleOrientation& other) const {
    return d1_ * other.d1_ + d2_ * other.d2_ + d3_ * other.d3_;
  }

  // |norm - 1| of the vector as passed in, before normalization. The CLI
  // warns when this exceeds 1e-6.
  double renormalization() const { return renorm_; }

 private:
  double d1_, d2_, d3_;
  double renorm_;
};

// Partially transparent mirror described by scalar averaged reflection and
// transmission rates, angle- and frequency-independent. Real rates with
// t_i = 1 - r_i; energy is not conserved side-by-side, which is what lets
// the cross-coupling survive.
struct AsymmetricMirror {
  AsymmetricMirror(double r_a_in, double r_b_in);

  double r_a, r_b;
  double t_a() const { return 1.0 - r_a; }
  double t_b() const { return 1.0 - r_b; }
};

// Ideal symmetric beam splitter with complex amplitudes, constrained by the
// Stokes relations |r_i|^2 + |t_i|^2 = 1 and r_a* t_b + t_a* r_b = 0. Under
// these constraints the mirror-mediated coupling vanishes identically.
struct SymmetricMirror {
  SymmetricMirror(Complex r_a_in, Complex t_a_in, Complex r_b_in, Complex t_b_in);

  Complex r_a, t_a, r_b, t_b;
};

using MirrorSpec = std::variant<AsymmetricMirror, SymmetricMirror>;

// Full geometry of one coupling computation.
struct GeometryConfig {
  GeometryConfig(double xi_in, DipoleOrientation a, DipoleOrientation b, MirrorSpec m);

  double xi;  // k0 (x_a + |x_b|), > 0
  DipoleOrientation dipole_a;
  DipoleOrientation dipole_b;
  MirrorSpec mirror;
};

// Mirror coupling prefactor. Asymmetric: t_a * r_b (real, in [0,1]).
// Symmetric: r_a* t_b + t_a* r_b, which the Stokes constraint pins to zero.
Complex coupling_prefactor(const MirrorSpec& mirror);

// Convenience: asymmetric mirror realizing a given t_a * r_b product,
// using r_b = 1 and t_a = coupling.
AsymmetricMirror mirror_from_coupling(double coupling);

}  // namespace mirrordip

#endif  // MIRRORDIP_GEOMETRY_HPP
