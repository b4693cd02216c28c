#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mirrordip/dynamics.hpp"
#include "mirrordip/errors.hpp"
#include "mirrordip/experiments.hpp"

using namespace mirrordip;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grids hit both endpoints exactly") {
  const std::vector<double> log3 = make_grid(1.0, 100.0, 3, Spacing::Log);
  CHECK(log3.front() == 1.0);
  CHECK(log3[1] == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(log3.back() == 100.0);

  const std::vector<double> lin5 = make_grid(0.0, 1.0, 5, Spacing::Linear);
  CHECK(lin5.front() == 0.0);
  CHECK(lin5[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lin5.back() == 1.0);

  CHECK_THROWS_AS(make_grid(0.0, 1.0, 3, Spacing::Log), ConstraintViolation);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 1, Spacing::Linear), ConstraintViolation);
}

TEST_CASE("sweep rows reproduce direct rate evaluations") {
  SweepSpec spec;
  spec.xi_min = 2.0 * kPi;
  spec.xi_max = 4.0 * kPi;
  spec.n_points = 2;
  spec.spacing = Spacing::Linear;
  spec.orientation_list = {0.0, 1.0};
  spec.coupling = 0.5;
  const Table table = sweep_xi(spec);

  CHECK(table.columns == std::vector<std::string>{"xi", "orientation", "re_gamma_ab",
                                                  "delta_mir"});
  CHECK(table.n_rows() == 4);
  // Rows are xi-major with the orientation list order inside.
  CHECK(table.col("xi")[0] == 2.0 * kPi);
  CHECK(table.col("xi")[1] == 2.0 * kPi);
  CHECK(table.col("xi")[2] == 4.0 * kPi);
  CHECK(table.col("orientation")[0] == 0.0);
  CHECK(table.col("orientation")[1] == 1.0);

  // In-plane row at xi = 2 pi against the frozen value.
  CHECK(table.col("re_gamma_ab")[0] ==
        doctest::Approx(3.0 / (64.0 * kPi * kPi)).epsilon(1e-12));
  CHECK(table.col("delta_mir")[0] ==
        doctest::Approx(-3.0 / (64.0 * kPi)).epsilon(1e-12));

  // Every row agrees with a direct evaluation at the same parameters.
  for (std::size_t row = 0; row < table.n_rows(); ++row) {
    const double c = table.col("orientation")[row];
    const DipoleOrientation d(c, std::sqrt(1.0 - c * c), 0.0);
    const GeometryConfig cfg(table.col("xi")[row], d, d, mirror_from_coupling(0.5));
    const ComplexRate g = gamma_ab(cfg);
    CHECK(table.col("re_gamma_ab")[row] == g.real());
    CHECK(table.col("delta_mir")[row] == g.imag());
  }
}

TEST_CASE("zero coupling produces zero rate columns") {
  SweepSpec spec;
  spec.n_points = 5;
  spec.coupling = 0.0;
  const Table table = sweep_xi(spec);
  for (std::size_t row = 0; row < table.n_rows(); ++row) {
    CHECK(table.col("re_gamma_ab")[row] == 0.0);
    CHECK(table.col("delta_mir")[row] == 0.0);
  }
}

TEST_CASE("numerical backends agree with the analytic one row by row") {
  SweepSpec base;
  base.xi_min = 0.2;
  base.xi_max = 40.0;
  base.n_points = 10;
  base.orientation_list = {0.0, 0.7, 1.0};

  SweepSpec quad = base;
  quad.backend = RateBackend::Quadrature;
  SweepSpec ang = base;
  ang.backend = RateBackend::Angular;

  const Table t_auto = sweep_xi(base);
  const Table t_quad = sweep_xi(quad);
  const Table t_ang = sweep_xi(ang);
  for (std::size_t row = 0; row < t_auto.n_rows(); ++row) {
    CHECK(std::abs(t_auto.col("re_gamma_ab")[row] - t_quad.col("re_gamma_ab")[row]) <
          1e-8);
    CHECK(std::abs(t_auto.col("delta_mir")[row] - t_quad.col("delta_mir")[row]) < 1e-8);
    CHECK(std::abs(t_auto.col("re_gamma_ab")[row] - t_ang.col("re_gamma_ab")[row]) <
          1e-8);
    CHECK(std::abs(t_auto.col("delta_mir")[row] - t_ang.col("delta_mir")[row]) < 1e-8);
  }
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  spec.xi_min = 0.0;
  CHECK_THROWS_AS(sweep_xi(spec), ConstraintViolation);
  spec = SweepSpec{};
  spec.xi_max = spec.xi_min;
  CHECK_THROWS_AS(sweep_xi(spec), ConstraintViolation);
  spec = SweepSpec{};
  spec.n_points = 1;
  CHECK_THROWS_AS(sweep_xi(spec), ConstraintViolation);
  spec = SweepSpec{};
  spec.orientation_list = {0.5, 1.2};
  CHECK_THROWS_AS(sweep_xi(spec), ConstraintViolation);
  spec = SweepSpec{};
  spec.coupling = 1.5;
  CHECK_THROWS_AS(sweep_xi(spec), ConstraintViolation);
}

TEST_CASE("lifetime table: start values, p-independence of the ratio, shape") {
  LifetimeSpec spec;  // defaults: p {0.05, 0.1, 0.2}, re_gamma 0.05
  const Table table = lifetime_curves(spec);
  CHECK(table.columns == std::vector<std::string>{"t", "p", "I", "I0", "ratio"});
  CHECK(table.n_rows() == 3 * 501);

  // First three rows are t = 0 for the three p values.
  for (std::size_t row = 0; row < 3; ++row) {
    CHECK(table.col("t")[row] == 0.0);
    const double p = table.col("p")[row];
    CHECK(table.col("I")[row] == 2.0 * p);
    CHECK(table.col("I0")[row] == 2.0 * p);
    CHECK(table.col("ratio")[row] == 1.0);
  }

  // ratio is the same for all p at fixed t and matches the closed form.
  for (std::size_t k = 0; k < 501; ++k) {
    const double t = table.col("t")[3 * k];
    const double r0 = table.col("ratio")[3 * k];
    CHECK(table.col("ratio")[3 * k + 1] == r0);
    CHECK(table.col("ratio")[3 * k + 2] == r0);
    CHECK(r0 == doctest::Approx(std::cosh(0.05 * t) - 0.05 * std::sinh(0.05 * t))
                    .epsilon(1e-14));
  }

  // Slower-then-faster crossover: below 1 before t*, above 1 after.
  const auto ratio_at = [&](double t_query) {
    double best = 1e9;
    double val = 0.0;
    for (std::size_t k = 0; k < table.n_rows(); k += 3) {
      if (std::abs(table.col("t")[k] - t_query) < best) {
        best = std::abs(table.col("t")[k] - t_query);
        val = table.col("ratio")[k];
      }
    }
    return val;
  };
  CHECK(ratio_at(1.0) < 1.0);
  CHECK(ratio_at(4.0) > 1.0);

  // I column equals the emission-rate function row by row.
  for (std::size_t row = 0; row < table.n_rows(); ++row) {
    CHECK(table.col("I")[row] ==
          emission_rate(table.col("p")[row], {0.05, 0.0}, table.col("t")[row]));
  }
}

TEST_CASE("emitted intensity integrates to twice the excitation probability") {
  LifetimeSpec spec;
  spec.t_max = 25.0;
  spec.n_steps = 12500;
  const Table table = lifetime_curves(spec);
  for (std::size_t which = 0; which < spec.p_list.size(); ++which) {
    const double p = spec.p_list[which];
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < 12501; ++k) {
      const double ia = table.col("I")[3 * k + which];
      const double ib = table.col("I")[3 * (k + 1) + which];
      const double dt = table.col("t")[3 * (k + 1)] - table.col("t")[3 * k];
      acc += 0.5 * dt * (ia + ib);
    }
    CHECK(acc == doctest::Approx(2.0 * p).epsilon(1e-6));
  }
}

TEST_CASE("lifetime spec validation") {
  LifetimeSpec spec;
  spec.p_list = {0.5, 1.0};
  CHECK_THROWS_AS(lifetime_curves(spec), ConstraintViolation);
  spec = LifetimeSpec{};
  spec.re_gamma = 1.0;
  CHECK_THROWS_AS(lifetime_curves(spec), ConstraintViolation);
  spec = LifetimeSpec{};
  spec.t_max = 0.0;
  CHECK_THROWS_AS(lifetime_curves(spec), ConstraintViolation);
  spec = LifetimeSpec{};
  spec.n_steps = 0;
  CHECK_THROWS_AS(lifetime_curves(spec), ConstraintViolation);
}

TEST_CASE("ratio crossing time") {
  CHECK(ratio_crossing_time(0.05) == 2.0 * std::atanh(0.05) / 0.05);
  CHECK(ratio_crossing_time(0.05) ==
        doctest::Approx(2.0016691711396506).epsilon(1e-14));
  CHECK(ratio_crossing_time(0.125) == 2.0 * std::atanh(0.125) / 0.125);
  CHECK(ratio_crossing_time(1e-8) == doctest::Approx(2.0).epsilon(1e-8));

  // The crossing exists for negative couplings too and satisfies ratio = 1.
  const double t_neg = ratio_crossing_time(-0.3);
  CHECK(t_neg > 0.0);
  CHECK(std::cosh(0.3 * t_neg) + 0.3 * std::sinh(-0.3 * t_neg) ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(ratio_crossing_time(0.0), NoCrossingError);
  CHECK_THROWS_AS(ratio_crossing_time(1.0), UnphysicalRateError);
  CHECK_THROWS_AS(ratio_crossing_time(-1.5), UnphysicalRateError);
}
