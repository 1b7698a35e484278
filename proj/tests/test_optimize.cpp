#include <doctest.h>

#include <cmath>

#include "squeezesim/adiabatic.hpp"
#include "squeezesim/optimize.hpp"
#include "squeezesim/spectral.hpp"
#include "support.hpp"

using namespace squeezesim;

TEST_CASE("grids") {
  const auto lin = linspace(0.0, 1.0, 5);
  REQUIRE(lin.size() == 5);
  CHECK(lin[2] == doctest::Approx(0.5));
  CHECK(lin.front() == 0.0);
  CHECK(lin.back() == 1.0);
  const auto lg = logspace(1.0, 1e4, 5);
  REQUIRE(lg.size() == 5);
  CHECK(lg[1] == doctest::Approx(10.0));
  CHECK(lg.back() == doctest::Approx(1e4));
  CHECK_NOTHROW(require_increasing(lin, "grid"));
  CHECK_THROWS_AS(require_increasing({0.0, 0.0, 1.0}, "grid"), ValidationError);
  CHECK_THROWS_AS(require_increasing({1.0, 0.5}, "grid"), ValidationError);
}

TEST_CASE("numeric optimum near the closed form") {
  const auto p = test::fig2_params();
  const auto opt = optimize_ratio_numeric(p, 0.1, 10.0);
  CHECK(std::abs(opt.ratio - optimal_ratio_closed_form(p, 0.1, 10.0)) < 1e-2);
  CHECK(opt.unimodal);
  auto q = p;
  q.n_m = 10.0;
  CHECK(opt.variance == doctest::Approx(
                            steady_variance_residues(CouplingSidebands::from_ratio(0.1, opt.ratio), q))
                            .epsilon(1e-12));
  CHECK(opt.variance <= steady_variance_residues(CouplingSidebands::from_ratio(0.1, 0.0), q));
}

TEST_CASE("hotter baths pull the optimum down") {
  const auto p = test::fig2_params();
  CHECK(optimize_ratio_numeric(p, 0.1, 1e6).ratio < optimize_ratio_numeric(p, 0.1, 10.0).ratio);
}

TEST_CASE("vanishing coupling cannot squeeze") {
  const auto p = test::fig2_params();
  const auto opt = optimize_ratio_numeric(p, 1e-9, 10.0);
  CHECK(opt.variance == doctest::Approx(10.5).epsilon(1e-6));
}

TEST_CASE("optimal ratio increases with G0") {
  const auto p = test::fig2_params();
  double prev = 0.0;
  for (double g : linspace(0.05, 0.3, 11)) {
    const double x = optimize_ratio_numeric(p, g, 10.0).ratio;
    CHECK(x > prev);
    prev = x;
  }
}

TEST_CASE("ratio sweep has an interior minimum and sharp occupancy growth") {
  const auto p = test::fig2_params();
  const auto grid = linspace(0.0, 0.999, 200);
  for (double nm : {10.0, 100.0}) {
    const auto s = sweep_ratio(p, 0.1, nm, grid);
    REQUIRE(s.size() == grid.size());
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s.variance[i] < s.variance[best]) best = i;
    CHECK(best > 0);
    CHECK(best + 1 < s.size());
    CHECK(s.occupancy.back() > 10.0 * s.occupancy[best]);
    CHECK(s.occupancy.front() < 1.0);
    auto q = p;
    q.n_m = nm;
    const double eq34 = 0.5 + (q.kappa * q.gamma_m / (4.0 * 0.01)) * (nm + 0.5);
    // Elimination drops the cavity heating by the mechanical bath, of order gamma_m n_m / kappa.
    CHECK(s.variance.front() > eq34);
    CHECK(s.variance.front() - eq34 <= 1.05 * q.gamma_m * nm / q.kappa + 2e-6);
    CHECK(s.adiabatic.has_value());
    CHECK(s.db()[best] == doctest::Approx(-10.0 * std::log10(s.variance[best] / 0.5)));
  }
}

TEST_CASE("ratio close to one returns the thermal variance") {
  const auto p = test::fig2_params();
  const auto s = sweep_ratio(p, 0.1, 10.0, {0.0, 1.0 - 1e-10});
  CHECK(test::rel_close(s.variance.back(), 10.5, 1e-2));
}

TEST_CASE("sweep errors") {
  const auto p = test::fig2_params();
  CHECK_THROWS_AS(sweep_ratio(p, 0.1, 10.0, {0.5, 0.2}), ValidationError);
}

TEST_CASE("property: optimized variance never exceeds the ratio-0 variance") {
  const auto p = test::fig2_params();
  const auto s = sweep_g0(p, 100.0, linspace(0.01, 0.3, 15));
  auto q = p;
  q.n_m = 100.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double base = steady_variance_residues(CouplingSidebands::from_ratio(s.points[i], 0.0), q);
    CHECK(s.variance[i] <= base);
  }
}

TEST_CASE("cooperativity sweep: larger kappa squeezes more at fixed C") {
  SystemParams p;
  p.gamma_m = 1e-5;
  p.n_m = 0.0;
  const auto grid = logspace(1e3, 1e5, 3);
  std::vector<double> prev;
  for (double kappa : {0.05, 0.1, 0.2}) {
    p.kappa = kappa;
    const auto s = sweep_cooperativity(p, 0.0, grid);
    const auto db = s.db();
    if (!prev.empty()) CHECK(db.back() > prev.back());
    prev = db;
  }
}

TEST_CASE("bath occupancy sweep falls through 3 dB") {
  auto p = test::fig2_params();
  p.gamma_m = 0.5e-6;
  const auto s = sweep_nm(p, 0.1, 0.99, logspace(1.0, 1e5, 41));
  const auto db = s.db();
  CHECK(db.front() == doctest::Approx(22.0).epsilon(0.07));
  for (std::size_t i = 1; i < db.size(); ++i) CHECK(db[i] < db[i - 1]);
  CHECK(db.back() < 3.0);
}

TEST_CASE("property: sweeps are bitwise identical serial and OpenMP") {
  const auto p = test::fig2_params();
  const auto grid = linspace(0.0, 0.99, 40);
  const auto a = sweep_ratio(p, 0.1, 10.0, grid, Execution::Serial);
  const auto b = sweep_ratio(p, 0.1, 10.0, grid, Execution::OpenMP);
  CHECK(a.variance == b.variance);
  CHECK(a.occupancy == b.occupancy);
  const auto g = linspace(0.02, 0.3, 8);
  const auto c = sweep_g0(p, 10.0, g, Execution::Serial);
  const auto d = sweep_g0(p, 10.0, g, Execution::OpenMP);
  CHECK(c.variance == d.variance);
  CHECK(c.ratio == d.ratio);
}
