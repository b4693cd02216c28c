#include "mirrordip/dynamics.hpp"

#include <cmath>
#include <map>

#include <unsupported/Eigen/MatrixFunctions>

#include "mirrordip/errors.hpp"

namespace mirrordip {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigenvalueFloor = -1e-10;

using Matrix16 = Eigen::Matrix<Complex, 16, 16>;
using Vector16 = Eigen::Matrix<Complex, 16, 1>;

// sigma_a^- and sigma_b^- in the product basis.
Eigen::Matrix4cd lowering_a() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 2) = 1.0;  // |21> -> |11>
  m(1, 3) = 1.0;  // |22> -> |12>
  return m;
}

Eigen::Matrix4cd lowering_b() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 1) = 1.0;  // |12> -> |11>
  m(2, 3) = 1.0;  // |22> -> |21>
  return m;
}

Matrix16 kron4(const Eigen::Matrix4cd& x, const Eigen::Matrix4cd& y) {
  Matrix16 k;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) k(4 * i + r, 4 * j + c) = x(i, j) * y(r, c);
  return k;
}

struct CollectivePopulations {
  double p11, pplus, pminus, p22;
};

CollectivePopulations populations_of(const DensityMatrix4& rho) {
  const double p11 = rho(0, 0).real();
  const double p22 = rho(3, 3).real();
  const double diag = (rho(1, 1) + rho(2, 2)).real();
  const double cross = (rho(1, 2) + rho(2, 1)).real();
  return {p11, 0.5 * (diag + cross), 0.5 * (diag - cross), p22};
}

// Amplitude decay rates of the collective basis states under H_cond.
std::array<double, 4> conditional_amplitude_rates(const LindbladGenerator& gen) {
  return {0.0, 0.5 * gen.gamma_plus, 0.5 * gen.gamma_minus, gen.gamma_free};
}

}  // namespace

void validate_time_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) {
    throw ConstraintViolation("t_grid must be non-empty");
  }
  if (t_grid.front() != 0.0) {
    throw ConstraintViolation("t_grid must start at 0");
  }
  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double dt = t_grid[k] - t_grid[k - 1];
    if (dt == 0.0) {
      throw IntegrationError("step-size underflow in t_grid");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw ConstraintViolation("t_grid must be strictly increasing and finite");
    }
  }
}

void validate_density(const DensityMatrix4& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw ConstraintViolation("density matrix must be Hermitian to 1e-12");
  }
  if (std::abs(rho.trace().real() - 1.0) > kTraceTol ||
      std::abs(rho.trace().imag()) > kTraceTol) {
    throw ConstraintViolation("density matrix must have unit trace to 1e-12");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho);
  if (solver.eigenvalues().minCoeff() < kEigenvalueFloor) {
    throw ConstraintViolation("density matrix must be positive semidefinite");
  }
}

Eigen::Matrix4d collective_basis_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
  b(0, 0) = 1.0;
  b(1, 1) = r;
  b(2, 1) = r;
  b(1, 2) = r;
  b(2, 2) = -r;
  b(3, 3) = 1.0;
  return b;
}

InitialState InitialState::product_mixture(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConstraintViolation("ProductMixture: p must lie in [0, 1]");
  }
  return {StateTag::ProductMixture, p};
}

DensityMatrix4 InitialState::density() const {
  const double r = 1.0 / std::sqrt(2.0);
  StateVector4 psi = StateVector4::Zero();
  switch (tag) {
    case StateTag::Plus:
      psi << 0.0, r, r, 0.0;
      break;
    case StateTag::Minus:
      psi << 0.0, r, -r, 0.0;
      break;
    case StateTag::DoublyExcited:
      psi << 0.0, 0.0, 0.0, 1.0;
      break;
    case StateTag::Ground:
      psi << 1.0, 0.0, 0.0, 0.0;
      break;
    case StateTag::ProductMixture: {
      DensityMatrix4 rho = DensityMatrix4::Zero();
      rho(0, 0) = (1.0 - p) * (1.0 - p);
      rho(1, 1) = p * (1.0 - p);
      rho(2, 2) = p * (1.0 - p);
      rho(3, 3) = p * p;
      return rho;
    }
  }
  return psi * psi.adjoint();
}

DensityMatrix4 LindbladGenerator::derivative(const DensityMatrix4& rho) const {
  DensityMatrix4 out = -kI * (h_cond * rho - rho * h_cond.adjoint());
  out += gamma_plus * (l_plus * rho * l_plus.adjoint());
  out += gamma_minus * (l_minus * rho * l_minus.adjoint());
  return out;
}

Eigen::Matrix<Complex, 16, 16> LindbladGenerator::superoperator() const {
  // Column-major vectorization: vec(A rho B) = (B^T kron A) vec(rho).
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  Matrix16 s = -kI * kron4(id, h_cond) + kI * kron4(h_cond.conjugate(), id);
  s += gamma_plus * kron4(l_plus.conjugate(), l_plus);
  s += gamma_minus * kron4(l_minus.conjugate(), l_minus);
  return s;
}

LindbladGenerator build_generator(ComplexRate gamma_ab, double gamma_free) {
  if (!(gamma_free > 0.0) || !std::isfinite(gamma_free)) {
    throw UnphysicalRateError("build_generator: gamma_free must be positive");
  }
  const CollectiveRates rates = collective_rates(gamma_ab);  // validates |Re| < 1

  LindbladGenerator gen;
  gen.gamma_free = gamma_free;
  gen.gamma_ab = gamma_ab;
  gen.gamma_plus = gamma_free * rates.gamma_plus;
  gen.gamma_minus = gamma_free * rates.gamma_minus;

  const Eigen::Matrix4cd sa = lowering_a();
  const Eigen::Matrix4cd sb = lowering_b();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  gen.l_plus = inv_sqrt2 * (sa + sb);
  gen.l_minus = inv_sqrt2 * (sa - sb);

  const double shift = gamma_free * gamma_ab.imag();
  gen.h_cond = 0.5 * shift * (sa.adjoint() * sb + sb.adjoint() * sa);
  gen.h_cond -= 0.5 * kI *
                (gen.gamma_plus * (gen.l_plus.adjoint() * gen.l_plus) +
                 gen.gamma_minus * (gen.l_minus.adjoint() * gen.l_minus));
  return gen;
}

TimeSeries evolve_master(const LindbladGenerator& gen, const DensityMatrix4& rho0,
                         const std::vector<double>& t_grid) {
  validate_density(rho0);
  validate_time_grid(t_grid);

  const Matrix16 superop = gen.superoperator();
  std::map<double, Matrix16> step_cache;

  TimeSeries out;
  out.t = t_grid;
  const std::size_t n = t_grid.size();
  out.pop_11.reserve(n);
  out.pop_plus.reserve(n);
  out.pop_minus.reserve(n);
  out.pop_22.reserve(n);

  Vector16 v = Eigen::Map<const Vector16>(rho0.data());
  const auto record = [&](const Vector16& vec) {
    const DensityMatrix4 rho = Eigen::Map<const DensityMatrix4>(vec.data());
    const CollectivePopulations pops = populations_of(rho);
    out.pop_11.push_back(pops.p11);
    out.pop_plus.push_back(pops.pplus);
    out.pop_minus.push_back(pops.pminus);
    out.pop_22.push_back(pops.p22);
  };

  record(v);
  for (std::size_t k = 1; k < n; ++k) {
    const double dt = t_grid[k] - t_grid[k - 1];
    auto it = step_cache.find(dt);
    if (it == step_cache.end()) {
      const Matrix16 propagator = (superop * dt).exp();
      it = step_cache.emplace(dt, propagator).first;
    }
    v = it->second * v;
    record(v);
  }
  return out;
}

namespace {

TimeSeries conditional_series(const LindbladGenerator& gen,
                              const Eigen::Matrix4cd& rho_collective,
                              const std::vector<double>& t_grid) {
  validate_time_grid(t_grid);
  const std::array<double, 4> rate = conditional_amplitude_rates(gen);

  TimeSeries out;
  out.t = t_grid;
  const std::size_t n = t_grid.size();
  out.pop_11.reserve(n);
  out.pop_plus.reserve(n);
  out.pop_minus.reserve(n);
  out.pop_22.reserve(n);
  out.p0.reserve(n);

  for (const double t : t_grid) {
    std::array<double, 4> pop{};
    for (int k = 0; k < 4; ++k) {
      // Population factor e^{-2 rate_k t} from the amplitude decay.
      pop[k] = rho_collective(k, k).real() * std::exp(-2.0 * rate[k] * t);
    }
    out.pop_11.push_back(pop[0]);
    out.pop_plus.push_back(pop[1]);
    out.pop_minus.push_back(pop[2]);
    out.pop_22.push_back(pop[3]);
    out.p0.push_back(pop[0] + pop[1] + pop[2] + pop[3]);
  }
  return out;
}

}  // namespace

TimeSeries evolve_conditional(const LindbladGenerator& gen, const DensityMatrix4& rho0,
                              const std::vector<double>& t_grid) {
  validate_density(rho0);
  const Eigen::Matrix4cd b = collective_basis_matrix().cast<Complex>();
  return conditional_series(gen, b.transpose() * rho0 * b, t_grid);
}

TimeSeries evolve_conditional(const LindbladGenerator& gen, const StateVector4& psi0,
                              const std::vector<double>& t_grid) {
  const Eigen::Matrix4cd b = collective_basis_matrix().cast<Complex>();
  const StateVector4 c = b.transpose() * psi0;
  return conditional_series(gen, c * c.adjoint(), t_grid);
}

namespace {

void check_probability_and_time(double p, double t) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConstraintViolation("excitation probability p must lie in [0, 1]");
  }
  if (!(t >= 0.0)) {
    throw ConstraintViolation("time must be nonnegative");
  }
}

}  // namespace

double survival_probability(double p, ComplexRate gamma_ab, double t) {
  check_probability_and_time(p, t);
  const CollectiveRates rates = collective_rates(gamma_ab);
  return (1.0 - p) * (1.0 - p) +
         (1.0 - p) * p *
             (std::exp(-rates.gamma_plus * t) + std::exp(-rates.gamma_minus * t)) +
         p * p * std::exp(-2.0 * kGammaFree * t);
}

double emission_rate(double p, ComplexRate gamma_ab, double t) {
  check_probability_and_time(p, t);
  const double r = gamma_ab.real();
  if (std::abs(r) >= kGammaFree) {
    throw UnphysicalRateError("emission_rate: |Re(gamma_ab)| must be < Gamma_free");
  }
  return 2.0 * p * (kGammaFree * std::cosh(r * t) - r * std::sinh(r * t)) *
         std::exp(-kGammaFree * t);
}

double first_emission_density(double p, ComplexRate gamma_ab, double t) {
  check_probability_and_time(p, t);
  const CollectiveRates rates = collective_rates(gamma_ab);
  return (1.0 - p) * p *
             (rates.gamma_plus * std::exp(-rates.gamma_plus * t) +
              rates.gamma_minus * std::exp(-rates.gamma_minus * t)) +
         2.0 * p * p * kGammaFree * std::exp(-2.0 * kGammaFree * t);
}

}  // namespace mirrordip
