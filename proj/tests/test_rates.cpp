#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "mirrordip/errors.hpp"
#include "mirrordip/geometry.hpp"
#include "mirrordip/rates.hpp"

using namespace mirrordip;

namespace {

constexpr double kPi = std::numbers::pi;

GeometryConfig config(double xi, DipoleOrientation da, DipoleOrientation db,
                      double coupling) {
  return GeometryConfig(xi, da, db, mirror_from_coupling(coupling));
}

bool close(Complex a, Complex b, double tol) {
  return std::abs(a.real() - b.real()) <=
             tol * std::max({1.0, std::abs(a.real()), std::abs(b.real())}) &&
         std::abs(a.imag() - b.imag()) <=
             tol * std::max({1.0, std::abs(a.imag()), std::abs(b.imag())});
}

const DipoleOrientation kX{1.0, 0.0, 0.0};
const DipoleOrientation kY{0.0, 1.0, 0.0};
const DipoleOrientation kZ{0.0, 0.0, 1.0};

}  // namespace

TEST_CASE("in-plane dipoles at xi = 2 pi, coupling 1/2") {
  const GeometryConfig cfg = config(2.0 * kPi, kY, kY, 0.5);
  // (3/32) * (1/(2 pi^2) - i/(2 pi))
  const Complex expected{3.0 / (64.0 * kPi * kPi), -3.0 / (64.0 * kPi)};
  CHECK(std::abs(gamma_ab_closed(cfg) - expected) < 1e-14);
  CHECK(std::abs(gamma_ab_series(cfg) - expected) < 1e-13);
  CHECK(std::abs(gamma_ab_quadrature(cfg) - expected) < 1e-10);
  CHECK(std::abs(gamma_ab_angular(cfg) - expected) < 1e-9);
}

TEST_CASE("zero coupling kills the rate identically") {
  const GeometryConfig cfg = config(3.7, kY, kZ, 0.0);
  CHECK(gamma_ab_closed(cfg) == Complex{0.0, 0.0});
  CHECK(gamma_ab_series(cfg) == Complex{0.0, 0.0});
  CHECK(std::abs(gamma_ab_quadrature(cfg)) == 0.0);
}

TEST_CASE("orthogonal dipoles decouple at any distance") {
  for (const double xi : {0.05, 1.0, 9.3}) {
    CHECK(std::abs(gamma_ab_closed(config(xi, kX, kY, 1.0))) < 1e-16);
    CHECK(std::abs(gamma_ab_series(config(xi, kY, kZ, 1.0))) < 1e-16);
    CHECK(std::abs(gamma_ab_quadrature(config(xi, kX, kZ, 1.0))) < 1e-12);
  }
}

TEST_CASE("small-distance limit approaches a quarter of the coupling times the overlap") {
  for (const double coupling : {0.5, 1.0}) {
    for (const DipoleOrientation& da : {kY, kX, DipoleOrientation{1.0, 1.0, 0.0}}) {
      const GeometryConfig cfg = config(1e-6, da, kY, coupling);
      const double overlap = da.dot(kY);
      const Complex g = gamma_ab_series(cfg);
      CHECK(std::abs(g.real() - 0.25 * coupling * overlap) < 1e-9);
      CHECK(std::abs(g.imag()) < 1e-6);  // shift grows linearly in xi
    }
  }
}

TEST_CASE("series and closed form agree across the branch point") {
  const double eps = 1e-9;
  for (const DipoleOrientation& d : {kY, kX, DipoleOrientation{0.6, 0.8, 0.0}}) {
    const Complex below = gamma_ab(config(kSeriesSwitchXi - eps, d, d, 0.5));
    const Complex at = gamma_ab(config(kSeriesSwitchXi, d, d, 0.5));
    const Complex above = gamma_ab(config(kSeriesSwitchXi + eps, d, d, 0.5));
    CHECK(std::abs(at - gamma_ab_series(config(kSeriesSwitchXi, d, d, 0.5))) == 0.0);
    CHECK(std::abs(below - at) < 1e-10);
    CHECK(std::abs(above - at) < 1e-10);
  }
}

TEST_CASE("pairwise oracle agreement on a mixed grid") {
  const std::vector<double> xis = {1e-3, 0.05, 0.3, 0.5, 0.8, 2.0, 2.0 * kPi, 15.0, 60.0};
  const std::vector<DipoleOrientation> dirs = {
      kX, kY, kZ, DipoleOrientation{1.0, 1.0, 0.0}, DipoleOrientation{0.3, -0.5, 0.8}};
  for (const double xi : xis) {
    for (const auto& da : dirs) {
      for (const auto& db : dirs) {
        const GeometryConfig cfg = config(xi, da, db, 0.5);
        const Complex fast = gamma_ab(cfg);
        const Complex quad = gamma_ab_quadrature(cfg);
        const Complex ang = gamma_ab_angular(cfg);
        CAPTURE(xi);
        CHECK(close(fast, quad, 1e-8));
        CHECK(close(quad, ang, 1e-8));
        CHECK(close(fast, ang, 1e-8));
      }
    }
  }
}

TEST_CASE("swapping the dipoles leaves the rate unchanged") {
  const DipoleOrientation da{0.2, 0.9, -0.3};
  const DipoleOrientation db{-0.5, 0.1, 0.8};
  for (const double xi : {0.3, 4.2}) {
    CHECK(gamma_ab(config(xi, da, db, 0.7)) == gamma_ab(config(xi, db, da, 0.7)));
  }
}

TEST_CASE("magnitude bound 3/8 t_a r_b") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  std::uniform_real_distribution<double> logxi(std::log(1e-3), std::log(100.0));
  for (int k = 0; k < 200; ++k) {
    const DipoleOrientation da{comp(rng), comp(rng), comp(rng)};
    const DipoleOrientation db{comp(rng), comp(rng), comp(rng)};
    const double xi = std::exp(logxi(rng));
    const double coupling = 0.5 * (comp(rng) + 1.0);
    const Complex g = gamma_ab(config(xi, da, db, coupling));
    CHECK(std::abs(g) <= 3.0 / 8.0 * coupling + 1e-12);
  }
}

TEST_CASE("far-field magnitude decays at least as 1/xi") {
  // Integration by parts bounds the integral by
  // (|q(0)| + |q(1)| + int |q'|) / xi <= 8/xi for unit dipoles.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> comp(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const DipoleOrientation da{comp(rng), comp(rng), comp(rng)};
    const DipoleOrientation db{comp(rng), comp(rng), comp(rng)};
    const double xi = 10.0 + 190.0 * 0.5 * (comp(rng) + 1.0);
    const Complex g = gamma_ab(config(xi, da, db, 1.0));
    CHECK(std::abs(g) * xi <= (3.0 / 16.0) * 8.0 + 1e-9);
  }
}

TEST_CASE("collective rates split symmetrically and reject unphysical input") {
  const CollectiveRates r = collective_rates(Complex{0.05, 0.4});
  CHECK(r.gamma_plus == 1.05);
  CHECK(r.gamma_minus == 0.95);
  CHECK(level_shift(Complex{0.05, 0.4}) == 0.4);
  CHECK_THROWS_AS(collective_rates(Complex{1.0, 0.0}), UnphysicalRateError);
  CHECK_THROWS_AS(collective_rates(Complex{-1.2, 0.0}), UnphysicalRateError);
}

TEST_CASE("geometry constructors reject invalid input") {
  CHECK_THROWS_AS(DipoleOrientation(0.0, 0.0, 0.0), ConstraintViolation);
  CHECK_THROWS_AS(AsymmetricMirror(-0.1, 0.5), ConstraintViolation);
  CHECK_THROWS_AS(AsymmetricMirror(0.5, 1.1), ConstraintViolation);
  CHECK_THROWS_AS(mirror_from_coupling(1.5), ConstraintViolation);
  CHECK_THROWS_AS(GeometryConfig(0.0, kY, kY, mirror_from_coupling(0.5)),
                  ConstraintViolation);
  CHECK_THROWS_AS(GeometryConfig(-2.0, kY, kY, mirror_from_coupling(0.5)),
                  ConstraintViolation);
}

TEST_CASE("dipoles are normalized on construction") {
  const DipoleOrientation d(0.0, 2.0, 0.0);
  CHECK(d.d2() == 1.0);
  CHECK(d.renormalization() == doctest::Approx(1.0).epsilon(1e-12));
  const DipoleOrientation unit(0.0, 1.0, 0.0);
  CHECK(unit.renormalization() == 0.0);
}

TEST_CASE("symmetric mirror obeys the loss-free constraint and decouples") {
  const double r = 1.0 / std::sqrt(2.0);
  const SymmetricMirror bs{Complex{r, 0.0}, Complex{0.0, r}, Complex{r, 0.0},
                           Complex{0.0, r}};
  CHECK(std::abs(coupling_prefactor(MirrorSpec{bs})) <= 1e-12);
  const GeometryConfig cfg(2.0, kY, kY, MirrorSpec{bs});
  CHECK(std::abs(gamma_ab(cfg)) <= 1e-12);

  CHECK_THROWS_AS(SymmetricMirror(Complex{1.0, 0.0}, Complex{1.0, 0.0},
                                  Complex{r, 0.0}, Complex{0.0, r}),
                  ConstraintViolation);
  CHECK_THROWS_AS(SymmetricMirror(Complex{r, 0.0}, Complex{r, 0.0}, Complex{r, 0.0},
                                  Complex{r, 0.0}),
                  ConstraintViolation);
}

TEST_CASE("asymmetric prefactor is the transmission-reflection product") {
  const AsymmetricMirror m(0.25, 0.8);
  CHECK(coupling_prefactor(MirrorSpec{m}) == Complex{0.75 * 0.8, 0.0});
  CHECK(coupling_prefactor(MirrorSpec{mirror_from_coupling(0.35)}) ==
        Complex{0.35, 0.0});
}
