#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "squeezesim/polynomial.hpp"
#include "support.hpp"

using namespace squeezesim;
using std::numbers::pi;

TEST_CASE("evaluation, product and derivative") {
  const Polynomial p({1.0, 2.0, 3.0});
  CHECK(p.degree() == 2);
  CHECK(std::abs(p(cplx(2.0, 0.0)) - cplx(17.0, 0.0)) < 1e-15);
  const auto dp = p.derivative();
  CHECK(dp.degree() == 1);
  CHECK(std::abs(dp(cplx(1.0, 0.0)) - cplx(8.0, 0.0)) < 1e-15);
  const auto q = Polynomial({-1.0, 1.0}) * Polynomial({1.0, 1.0});
  CHECK(q.degree() == 2);
  CHECK(std::abs(q(cplx(3.0, 0.0)) - cplx(8.0, 0.0)) < 1e-15);
}

TEST_CASE("leading zeros are trimmed") {
  const Polynomial p({1.0, 1.0, 0.0, 0.0});
  CHECK(p.degree() == 1);
}

TEST_CASE("roots of (x-1)(x-2)(x-3)") {
  const auto p = Polynomial({-1.0, 1.0}) * Polynomial({-2.0, 1.0}) * Polynomial({-3.0, 1.0});
  auto r = p.roots();
  REQUIRE(r.size() == 3);
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  for (int k = 0; k < 3; ++k) CHECK(std::abs(r[k] - cplx(k + 1.0, 0.0)) < 1e-13);
}

TEST_CASE("property: roots of random complex polynomials are zeros") {
  test::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int deg = 2 + trial % 5;
    std::vector<cplx> c(deg + 1);
    for (auto& z : c) z = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    c.back() = {1.0, 0.0};
    const Polynomial p(c);
    const auto r = p.roots();
    REQUIRE(static_cast<int>(r.size()) == deg);
    for (const auto& z : r) {
      double scale = 0.0;
      for (int k = 0; k <= deg; ++k) scale += std::abs(c[k]) * std::pow(std::abs(z), k);
      CHECK(std::abs(p(z)) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("real-line integrals by residues") {
  SUBCASE("1/(1+x^2)") {
    const auto v = integrate_rational(Polynomial({1.0}), Polynomial({1.0, 0.0, 1.0}));
    REQUIRE(v);
    CHECK(v->value == doctest::Approx(pi).epsilon(1e-14));
  }
  SUBCASE("1/((x^2+1)(x^2+4))") {
    const auto den = Polynomial({1.0, 0.0, 1.0}) * Polynomial({4.0, 0.0, 1.0});
    const auto v = integrate_rational(Polynomial({1.0}), den);
    REQUIRE(v);
    CHECK(v->value == doctest::Approx(pi / 6.0).epsilon(1e-14));
  }
  SUBCASE("x^2/((x^2+1)(x^2+4))") {
    const auto den = Polynomial({1.0, 0.0, 1.0}) * Polynomial({4.0, 0.0, 1.0});
    const auto v = integrate_rational(Polynomial({0.0, 0.0, 1.0}), den);
    REQUIRE(v);
    CHECK(v->value == doctest::Approx(pi / 3.0).epsilon(1e-14));
  }
  SUBCASE("Lorentzian of width g") {
    const double g = 1e-3;
    const auto v = integrate_rational(Polynomial({g}), Polynomial({g * g / 4.0, 0.0, 1.0}));
    REQUIRE(v);
    CHECK(v->value == doctest::Approx(2.0 * pi).epsilon(1e-12));
  }
}

TEST_CASE("repeated roots defer to the caller") {
  const auto den = Polynomial({1.0, 0.0, 1.0}) * Polynomial({1.0, 0.0, 1.0});
  CHECK_FALSE(integrate_rational(Polynomial({1.0}), den).has_value());
}

TEST_CASE("integrate_rational errors") {
  CHECK_THROWS_AS(integrate_rational(Polynomial({0.0, 1.0}), Polynomial({1.0, 0.0, 1.0})),
                  NumericError);
  CHECK_THROWS_AS(integrate_rational(Polynomial({1.0}), Polynomial({-1.0, 0.0, 1.0})),
                  NumericError);
}
