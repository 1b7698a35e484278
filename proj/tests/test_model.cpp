#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "squeezesim/covariance.hpp"
#include "squeezesim/model.hpp"
#include "support.hpp"

using namespace squeezesim;

namespace {

bool has_violation(const ValidationError& e, const std::string& msg) {
  const auto& v = e.violations();
  return std::find(v.begin(), v.end(), msg) != v.end();
}

}  // namespace

TEST_CASE("validate accepts the Fig. 2 rates") {
  const auto p = test::fig2_params();
  CHECK_NOTHROW(validate(p));
  CHECK(&validate(p) == &p);
}

TEST_CASE("validate reports each violated field") {
  SUBCASE("kappa = 0") {
    auto p = test::fig2_params();
    p.kappa = 0.0;
    try {
      validate(p);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(has_violation(e, "kappa must be positive"));
    }
  }
  SUBCASE("n_m = -1") {
    auto p = test::fig2_params();
    p.n_m = -1.0;
    try {
      validate(p);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(has_violation(e, "n_m must be non-negative"));
    }
  }
  SUBCASE("several at once") {
    auto p = test::fig2_params();
    p.kappa = -1.0;
    p.gamma_m = 0.0;
    p.n_a = -0.5;
    p.omega_m = 2.0;
    try {
      validate(p);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(e.violations().size() == 4);
      CHECK(has_violation(e, "gamma_m must be positive"));
      CHECK(has_violation(e, "n_a must be non-negative"));
      CHECK(has_violation(e, "omega_m must be exactly 1"));
    }
  }
  SUBCASE("non-finite") {
    auto p = test::fig2_params();
    p.delta_a = std::nan("");
    CHECK_THROWS_AS(validate(p), ValidationError);
  }
  SUBCASE("drive frequency") {
    DriveSidebands d;
    d.Omega = 0.0;
    CHECK_THROWS_AS(validate(d), ValidationError);
  }
}

TEST_CASE("cooperativity") {
  const auto p = test::fig2_params();
  CHECK(test::rel_close(cooperativity(p, 0.1), 4e5, 1e-12));
  CHECK(cooperativity(p, 0.0) == 0.0);
  CHECK(test::rel_close(cooperativity(p, 0.2), 1.6e6, 1e-12));
}

TEST_CASE("cooperativity is homogeneous of degree two in G0") {
  test::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    SystemParams p;
    p.kappa = rng.log_uniform(1e-3, 1.0);
    p.gamma_m = rng.log_uniform(1e-7, 1e-3);
    const double g = rng.uniform(0.0, 0.5);
    const double s = rng.uniform(0.1, 10.0);
    CHECK(test::rel_close(cooperativity(p, s * g), s * s * cooperativity(p, g), 1e-13));
  }
}

TEST_CASE("stability examples") {
  const auto p = test::fig2_params();
  CHECK(stability({0.0, 0.1, 0.05}, p) == Stability::Stable);
  CHECK(stability({0.0, 0.1, 0.1}, p) == Stability::Marginal);
  CHECK(stability({0.0, 0.05, 0.1}, p) == Stability::Unstable);
  CHECK(std::string(to_string(Stability::Marginal)) == "marginal");
}

TEST_CASE("stability needs real tones") {
  CHECK_THROWS_AS(stability({0.0, cplx(0.1, 0.01), 0.05}, test::fig2_params()), ValidationError);
}

TEST_CASE("property: negative spectral abscissa iff G0 > G1 >= 0") {
  test::Rng rng(12);
  int stable = 0, unstable = 0;
  for (int i = 0; i < 500; ++i) {
    SystemParams p;
    p.kappa = rng.log_uniform(1e-3, 1.0);
    p.gamma_m = rng.log_uniform(1e-7, 1e-2);
    const double g0 = rng.uniform(0.0, 0.4);
    const double g1 = rng.uniform(0.0, 0.4);
    // Outside the marginal band the classes follow the reduced criterion exactly.
    if (std::abs(g0 * g0 - g1 * g1) < p.kappa * p.gamma_m) continue;
    const CouplingSidebands c{0.0, g0, g1};
    const double abscissa = spectral_abscissa(drift_rwa(c, p).m);
    CHECK((abscissa < 0.0) == (g0 > g1));
    const auto s = stability(c, p);
    CHECK((s == Stability::Stable) == (g0 > g1));
    CHECK((s == Stability::Unstable) == (g1 > g0));
    (g0 > g1 ? stable : unstable)++;
  }
  CHECK(stable > 100);
  CHECK(unstable > 100);
}

TEST_CASE("marginal band between the reduced and eigenvalue criteria") {
  // Eigenvalue stability holds for G0^2 - G1^2 > -kappa gamma_m / 4.
  const auto p = test::fig2_params();
  const double g0 = 0.1;
  const double edge = std::sqrt(g0 * g0 + p.kappa * p.gamma_m / 4.0);
  CHECK(stability({0.0, g0, g0 + 0.5 * (edge - g0)}, p) == Stability::Marginal);
  CHECK(stability({0.0, g0, edge + 1e-6}, p) == Stability::Unstable);
}

TEST_CASE("coupling tones") {
  const auto c = test::fig2_tones();
  CHECK(c.g_minus() == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(c.g_plus() == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(c.at(0.0, 2.0).real() == doctest::Approx(0.16).epsilon(1e-15));
  // e^{2r} = (1 + x)/(1 - x) = 3 at x = 1/2.
  CHECK(std::exp(2.0 * c.squeezing_parameter()) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(c.bogoliubov_coupling() == doctest::Approx(std::sqrt(0.0075)).epsilon(1e-14));
  CHECK(CouplingSidebands{0.0, 0.1, 0.2}.bogoliubov_coupling() == 0.0);
  const auto r = CouplingSidebands::from_ratio(0.2, 0.25);
  CHECK(r.g_0.real() == 0.2);
  CHECK(r.g_plus1.real() == doctest::Approx(0.05));
  CHECK(r.is_real());
  CHECK_FALSE(CouplingSidebands{cplx(0, 0.01), 0.1, 0.0}.is_real());
}

TEST_CASE("drive waveform") {
  DriveSidebands d{cplx(1.0, 0.0), cplx(2.0, 0.0), cplx(3.0, 0.0), 2.0};
  CHECK(d.period() == doctest::Approx(M_PI));
  CHECK(std::abs(d.at(0.0) - cplx(6.0, 0.0)) < 1e-15);
  // t = tau/4: e^{i Omega t} = i.
  CHECK(std::abs(d.at(M_PI / 4.0) - cplx(2.0, -2.0)) < 1e-14);
}

TEST_CASE("initial covariance state") {
  const auto v = CovarianceMatrix::initial_state(test::fig2_params());
  CHECK(v(0, 0) == 0.5);
  CHECK(v(1, 1) == 0.5);
  CHECK(v(2, 2) == 10.5);
  CHECK(v(3, 3) == 10.5);
  CHECK(v(0, 1) == 0.0);
  CHECK(v.mechanical_determinant() == doctest::Approx(110.25));
}
