#pragma once

// Domain types for a cavity optomechanical system driven by a three-tone,
// periodically amplitude-modulated pump. All rates and frequencies are in
// units of the mechanical frequency, so omega_m is exactly 1.

#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "squeezesim/errors.hpp"

namespace squeezesim {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix4d;
using Mat2 = Eigen::Matrix2d;

struct SystemParams {
  double omega_m = 1.0;
  double kappa = 0.1;      // cavity decay
  double gamma_m = 1e-6;   // mechanical damping
  double g0 = 0.0;         // single-photon coupling
  double delta_a = 1.0;    // bare laser-cavity detuning
  double delta_eff = 1.0;  // effective detuning used by the linearized dynamics
  double n_a = 0.0;        // cavity bath occupancy
  double n_m = 0.0;        // mechanical bath occupancy
  double phi = 0.0;        // drive phase
};

/// Drive eps_L(t) = eps_minus1 e^{i Omega t} + eps_0 + eps_plus1 e^{-i Omega t}.
struct DriveSidebands {
  cplx eps_minus1{};
  cplx eps_0{};
  cplx eps_plus1{};
  double Omega = 2.0;

  double period() const { return 2.0 * std::numbers::pi / Omega; }
  cplx at(double t) const;
};

/// Effective coupling G(t) = g_minus1 e^{i Omega t} + g_0 + g_plus1 e^{-i Omega t}.
struct CouplingSidebands {
  cplx g_minus1{};
  cplx g_0{};
  cplx g_plus1{};

  cplx at(double t, double Omega) const;

  /// G_- = G_0 - G_1 and G_+ = G_0 + G_1 (real tones).
  double g_minus() const { return g_0.real() - g_plus1.real(); }
  double g_plus() const { return g_0.real() + g_plus1.real(); }
  /// Bogoliubov-cavity coupling sqrt(G_0^2 - G_1^2); zero when |G_1| >= |G_0|.
  double bogoliubov_coupling() const;
  /// r = arctanh(G_1/G_0).
  double squeezing_parameter() const;
  bool is_real(double tol = 1e-14) const;

  static CouplingSidebands from_ratio(double g0c, double ratio, double g_minus1 = 0.0) {
    return {g_minus1, g0c, ratio * g0c};
  }
};

/// Symmetrized second moments of (dX_a, dY_a, dX_b, dY_b).
struct CovarianceMatrix {
  Mat4 v = Mat4::Identity() * 0.5;

  double operator()(int i, int j) const { return v(i, j); }
  Mat2 mechanical_block() const { return v.block<2, 2>(2, 2); }
  double position_variance() const { return v(2, 2); }
  double momentum_variance() const { return v(3, 3); }
  /// V33 V44 - V34^2, bounded below by 1/4 for physical states.
  double mechanical_determinant() const;

  /// Cavity in vacuum, mechanics thermal with occupancy n_m.
  static CovarianceMatrix initial_state(const SystemParams& p);
};

enum class Stability { Stable, Marginal, Unstable };

const char* to_string(Stability s);

/// Throws ValidationError listing every violated invariant.
const SystemParams& validate(const SystemParams& params);
void validate(const DriveSidebands& drive);

/// C = 4 G_0^2 / (kappa gamma_m).
double cooperativity(const SystemParams& params, double g0c);

/// Classifies the rotating-frame dynamics. The reduced criterion |G_1| < |G_0|
/// is checked against the spectrum of the rotating-frame drift. Marginal covers
/// |G_1| >= |G_0| while no eigenvalue has a positive real part.
Stability stability(const CouplingSidebands& couplings, const SystemParams& params);

/// Largest real part among eigenvalues of a 4x4 real matrix.
double spectral_abscissa(const Mat4& m);

}  // namespace squeezesim
