#ifndef MIRRORDIP_DYNAMICS_HPP
#define MIRRORDIP_DYNAMICS_HPP

#include <vector>

#include <Eigen/Dense>

#include "mirrordip/geometry.hpp"
#include "mirrordip/rates.hpp"

// Open-system dynamics of the two-atom system.
//
// Basis conventions used everywhere in this module:
//   product basis    (|11>, |12>, |21>, |22>)   left slot = atom a,
//                                               1 = ground, 2 = excited
//   collective basis (|11>, |+>, |->, |22>)     |+-> = (|12> +- |21>)/sqrt(2)
//
// Density matrices at API boundaries are in the product basis; population
// channels of a TimeSeries are reported in the collective basis, where the
// no-jump Hamiltonian is diagonal.

namespace mirrordip {

using DensityMatrix4 = Eigen::Matrix4cd;
using StateVector4 = Eigen::Vector4cd;

// Checks Hermiticity (1e-12), unit trace (1e-12) and positive
// semidefiniteness (eigenvalues >= -1e-10); throws ConstraintViolation.
void validate_density(const DensityMatrix4& rho);

// Grids must be non-empty, start at 0 and be strictly increasing; a repeated
// time value is reported as step-size underflow (IntegrationError).
void validate_time_grid(const std::vector<double>& t_grid);

// Orthogonal change of basis: columns are the collective basis vectors
// expressed in the product basis.
Eigen::Matrix4d collective_basis_matrix();

enum class StateTag { Plus, Minus, DoublyExcited, Ground, ProductMixture };

struct InitialState {
  StateTag tag = StateTag::Ground;
  double p = 0.0;  // per-atom excitation probability (ProductMixture only)

  static InitialState plus() { return {StateTag::Plus, 0.0}; }
  static InitialState minus() { return {StateTag::Minus, 0.0}; }
  static InitialState doubly_excited() { return {StateTag::DoublyExcited, 0.0}; }
  static InitialState ground() { return {StateTag::Ground, 0.0}; }
  static InitialState product_mixture(double p);

  // Product-basis density matrix; ProductMixture(p) gives
  // diag((1-p)^2, p(1-p), p(1-p), p^2).
  DensityMatrix4 density() const;
};

// Time grid plus named per-time channels. Channels not filled by a given
// operation are left empty; the *_sem channels are standard errors of the
// mean and only filled by mc_trajectories.
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> pop_11, pop_plus, pop_minus, pop_22;
  std::vector<double> p0;                             // no-emission probability
  std::vector<double> intensity, intensity_free, ratio;  // I, I0, I/I0
  std::vector<double> pop_11_sem, pop_plus_sem, pop_minus_sem, pop_22_sem, p0_sem;
};

// Lindblad generator of the coupled decay:
//   rho' = -i (H_cond rho - rho H_cond^dag)
//          + G+ L+ rho L+^dag + G- L- rho L-^dag
// with L+- = (sigma_a^- +- sigma_b^-)/sqrt(2), G+- = gamma_free +- Re(gamma_ab),
// and H_cond = (D/2)(sigma_a^+ sigma_b^- + sigma_b^+ sigma_a^-)
//              - (i/2)(G+ L+^dag L+ + G- L-^dag L-),  D = Im(gamma_ab).
// The Hermitian D term shifts |+-> by +-D/2 and leaves all populations and
// norms untouched.
struct LindbladGenerator {
  double gamma_free = 1.0;
  ComplexRate gamma_ab{0.0, 0.0};
  double gamma_plus = 1.0;
  double gamma_minus = 1.0;
  Eigen::Matrix4cd l_plus;   // product basis
  Eigen::Matrix4cd l_minus;
  Eigen::Matrix4cd h_cond;   // non-Hermitian, product basis

  // Right-hand side of the master equation.
  DensityMatrix4 derivative(const DensityMatrix4& rho) const;

  // 16x16 matrix acting on the column-major vectorization of rho.
  Eigen::Matrix<Complex, 16, 16> superoperator() const;
};

LindbladGenerator build_generator(ComplexRate gamma_ab, double gamma_free = kGammaFree);

// Propagates rho0 on the grid with the exact matrix exponential of the
// superoperator (one exponential per distinct step size). Fills the four
// population channels; their sum stays 1 to numerical precision.
TimeSeries evolve_master(const LindbladGenerator& gen, const DensityMatrix4& rho0,
                         const std::vector<double>& t_grid);

// No-jump (conditional) evolution: the propagator is diagonal in the
// collective basis with amplitude factors
//   (1, e^{-G+ t/2}, e^{-G- t/2}, e^{-gamma_free t}).
// Population channels carry the unnormalized conditional populations and p0
// carries the no-emission probability (trace / squared norm).
TimeSeries evolve_conditional(const LindbladGenerator& gen, const DensityMatrix4& rho0,
                              const std::vector<double>& t_grid);
TimeSeries evolve_conditional(const LindbladGenerator& gen, const StateVector4& psi0,
                              const std::vector<double>& t_grid);

// Closed-form no-emission probability for the product mixture with per-atom
// excitation probability p:
//   P0(t) = (1-p)^2 + (1-p) p (e^{-G+ t} + e^{-G- t}) + p^2 e^{-2 gamma_free t}.
double survival_probability(double p, ComplexRate gamma_ab, double t);

// First-order-in-p photon emission rate,
//   I(t) = 2 p [gamma_free cosh(R t) - R sinh(R t)] e^{-gamma_free t},
// with R = Re(gamma_ab).
double emission_rate(double p, ComplexRate gamma_ab, double t);

// Exact density of the first emission time, w1 = -dP0/dt:
//   (1-p) p (G+ e^{-G+ t} + G- e^{-G- t}) + 2 p^2 gamma_free e^{-2 gamma_free t}.
double first_emission_density(double p, ComplexRate gamma_ab, double t);

}  // namespace mirrordip

#endif  // MIRRORDIP_DYNAMICS_HPP
