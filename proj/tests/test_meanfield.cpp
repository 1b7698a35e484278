#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "squeezesim/meanfield.hpp"
#include "support.hpp"

using namespace squeezesim;
using std::numbers::pi;

namespace {

SystemParams a1_params() {
  SystemParams p;
  p.kappa = 0.1;
  p.gamma_m = 1e-6;
  p.delta_a = 1.0;
  p.g0 = 4e-6;
  return p;
}

DriveSidebands a1_drive() { return {0.7e4, 1.4e4, 0.7e4, 2.0}; }

}  // namespace

TEST_CASE("zero drive stays at rest") {
  const DriveSidebands d{0.0, 0.0, 0.0, 2.0};
  const auto traj = integrate_meanfield(a1_params(), d, 10.0 * pi, default_meanfield_step(d),
                                        MeanFieldOptions{0.0, 100, 1e12});
  for (std::size_t i = 0; i < traj.size(); ++i) {
    CHECK(traj.a[i] == cplx{});
    CHECK(traj.b[i] == cplx{});
  }
  const auto amps = floquet_amplitudes(a1_params(), d, 4);
  CHECK(amps.a_at(0.3) == cplx{});
  const auto est = effective_coupling(a1_params(), traj);
  CHECK(est.tones.g_0 == cplx{});
  CHECK(est.residual == 0.0);
}

TEST_CASE("constant drive without coupling relaxes to the linear response") {
  auto p = a1_params();
  p.g0 = 0.0;
  const DriveSidebands d{0.0, 1.4e4, 0.0, 2.0};
  const auto traj = integrate_meanfield(p, d, 400.0, default_meanfield_step(d),
                                        MeanFieldOptions{390.0, 100, 1e12});
  const cplx expect = 1.4e4 / cplx(0.05, 1.0);
  CHECK(std::abs(expect) == doctest::Approx(1.397e4).epsilon(1e-3));
  CHECK(std::abs(traj.a.back() - expect) <= 1e-6 * std::abs(expect));
  CHECK(traj.b.back() == cplx{});
}

TEST_CASE("trajectory bookkeeping") {
  const auto d = a1_drive();
  const double dt = default_meanfield_step(d);
  CHECK(dt == doctest::Approx(pi / 2000.0));
  const auto traj = integrate_meanfield(a1_params(), d, 2.0 * pi, dt, MeanFieldOptions{pi, 20, 1e12});
  CHECK(traj.period == doctest::Approx(pi));
  CHECK(traj.dt == doctest::Approx(20.0 * dt));
  CHECK(traj.t_in_periods(0) == doctest::Approx(1.0));
  CHECK(traj.t_in_periods(traj.size() - 1) == doctest::Approx(2.0));
  for (std::size_t i = 1; i < traj.size(); ++i)
    CHECK(traj.t[i] - traj.t[i - 1] == doctest::Approx(traj.dt));
}

TEST_CASE("integrate_meanfield errors") {
  const auto d = a1_drive();
  CHECK_THROWS_AS(integrate_meanfield(a1_params(), d, 1.0, pi / 900.0), ValidationError);
  try {
    integrate_meanfield(a1_params(), d, 10.0, default_meanfield_step(d),
                        MeanFieldOptions{0.0, 1, 100.0});
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("t = ") != std::string::npos);
  }
  auto bad = a1_params();
  bad.kappa = 0.0;
  CHECK_THROWS_AS(integrate_meanfield(bad, d, 1.0, 1e-3), ValidationError);
}

TEST_CASE("Floquet zeroth order and parity") {
  const auto p = a1_params();
  const auto d = a1_drive();
  const auto amps = floquet_amplitudes(p, d, 6, 5);
  const int nm = amps.n_max;
  // a_{n,0} = eps_{-n} / (i(delta_a + n Omega) + kappa/2); b_{n,0} = 0.
  CHECK(std::abs(amps.a_terms[0][1 + nm] - d.eps_minus1 / cplx(0.05, 3.0)) < 1e-9);
  CHECK(std::abs(amps.a_terms[0][0 + nm] - d.eps_0 / cplx(0.05, 1.0)) < 1e-9);
  CHECK(std::abs(amps.a_terms[0][-1 + nm] - d.eps_plus1 / cplx(0.05, -1.0)) < 1e-9);
  for (const auto& z : amps.b_terms[0]) CHECK(z == cplx{});
  for (int j = 0; j <= 6; ++j)
    for (int n = -nm; n <= nm; ++n) {
      if (j % 2 == 1) CHECK(amps.a_terms[j][n + nm] == cplx{});
      if (j % 2 == 0) CHECK(amps.b_terms[j][n + nm] == cplx{});
    }
  CHECK(amps.converged);
  CHECK(amps.warnings.empty());
  for (int j = 2; j <= 6; j += 2) CHECK(amps.order_norm(j) < amps.order_norm(j - 2));
}

TEST_CASE("Floquet expansion terminates at zeroth order without coupling") {
  auto p = a1_params();
  p.g0 = 0.0;
  const auto amps = floquet_amplitudes(p, a1_drive(), 10);
  for (int j = 1; j <= 10; ++j) CHECK(amps.order_norm(j) == 0.0);
  CHECK(amps.a[1] == amps.a_terms[0][amps.n_max]);
}

TEST_CASE("Floquet argument checks and warnings") {
  CHECK_THROWS_AS(floquet_amplitudes(a1_params(), a1_drive(), 21), ValidationError);
  CHECK_THROWS_AS(floquet_amplitudes(a1_params(), a1_drive(), 2, 0), ValidationError);
  auto p = a1_params();
  p.g0 = 0.05;
  CHECK_FALSE(floquet_amplitudes(p, {0.0, 1.0, 0.0, 2.0}, 1).warnings.empty());
}

TEST_CASE("effective coupling scales the amplitudes by g0") {
  const auto p = a1_params();
  const auto amps = floquet_amplitudes(p, a1_drive(), 10);
  const auto est = effective_coupling(p, amps);
  CHECK(std::abs(est.tones.g_minus1 - 4e-6 * amps.a[0]) < 1e-15);
  CHECK(std::abs(est.tones.g_0 - 4e-6 * amps.a[1]) < 1e-15);
  CHECK(std::abs(est.tones.g_plus1 - 4e-6 * amps.a[2]) < 1e-15);
}

TEST_CASE("synthesis kernel poles and corrections") {
  auto p = a1_params();
  const CouplingSidebands target{0.01, 0.1, 0.05};
  const auto k = synthesis_kernel(p, target, 2.0);
  CHECK(k.s2 == cplx(0.0, 4.0));
  CHECK(k.s3 == cplx(0.0, -4.0));
  CHECK(k.s4 == cplx(0.0, 2.0));
  CHECK(k.s5 == cplx(0.0, -2.0));
  // Hand evaluation with s1 = -i (gamma_m dropped): k0 = 0.0126 / 8e-6, k3 = 250, k4 = -750.
  CHECK(std::abs(k.k0 - cplx(1575.0, 0.0)) < 1e-2);
  CHECK(std::abs(k.k3 - cplx(250.0, 0.0)) < 1e-2);
  CHECK(std::abs(k.k4 - cplx(-750.0, 0.0)) < 1e-2);
}

TEST_CASE("synthesized drive") {
  const auto p = a1_params();
  const CouplingSidebands target{0.01, 0.1, 0.05};
  SUBCASE("zero target gives zero drive") {
    for (auto rule : {SynthesisRule::ClosedForm, SynthesisRule::HarmonicBalance}) {
      const auto d = synthesize_drive(p, {0.0, 0.0, 0.0}, 2.0, rule);
      CHECK(d.eps_minus1 == cplx{});
      CHECK(d.eps_0 == cplx{});
      CHECK(d.eps_plus1 == cplx{});
    }
  }
  SUBCASE("closed form: leading term plus corrections") {
    const auto d = synthesize_drive(p, target, 2.0, SynthesisRule::ClosedForm);
    const cplx leading = 0.1 / 4e-6 * cplx(0.05, 1.0);
    CHECK(std::abs(leading - cplx(1250.0, 25000.0)) < 1e-9);
    // eps_0 = leading - i (k34 (G-1 + G1) + 2 k0 G0) with k34 = -500, k0 = 1575.
    CHECK(std::abs(d.eps_0 - cplx(1250.0, 24715.0)) < 0.05);
  }
  SUBCASE("errors") {
    auto q = p;
    q.g0 = 0.0;
    CHECK_THROWS_AS(synthesize_drive(q, target, 2.0), ValidationError);
    CHECK_THROWS_AS(synthesize_drive(p, {0.0, cplx(0.1, 0.1), 0.0}, 2.0), ValidationError);
  }
  SUBCASE("drive phase is removed") {
    auto q = p;
    q.phi = 0.3;
    const auto a = synthesize_drive(p, target, 2.0);
    const auto b = synthesize_drive(q, target, 2.0);
    CHECK(std::abs(b.eps_0 * std::polar(1.0, 0.3) - a.eps_0) < 1e-9 * std::abs(a.eps_0));
  }
}

TEST_CASE("detuning shift") {
  auto p = a1_params();
  CHECK(detuning_shift(p, cplx(2.0, 5.0)) == doctest::Approx(16e-6));
}

TEST_CASE("first periodic period") {
  std::vector<cplx> s;
  for (int k = 0; k < 50; ++k) s.push_back(cplx(std::sin(2.0 * pi * k / 10.0), 0.0) + (k < 20 ? k : 0.0));
  CHECK(first_periodic_period(s, 10) == 3);
  CHECK(first_periodic_period(s, 0) == -1);
  std::vector<cplx> growing;
  for (int k = 0; k < 50; ++k) growing.push_back(cplx(k, 0.0));
  CHECK(first_periodic_period(growing, 10) == -1);
}

TEST_CASE("cavity settles before the mechanics") {
  const auto p = a1_params();
  const auto d = a1_drive();
  const auto traj = integrate_meanfield(p, d, 60.0 * pi, default_meanfield_step(d),
                                        MeanFieldOptions{0.0, 20, 1e12});
  const std::size_t per = 100;
  const long cav = first_periodic_period(traj.a, per, 1e-2);
  const long mech = first_periodic_period(traj.b, per, 1e-2);
  REQUIRE(cav > 0);
  CHECK((mech < 0 || cav < mech));
}
