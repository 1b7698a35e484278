#pragma once

// Classical mean amplitudes <a(t)>, <b(t)> under the three-tone drive: direct
// time integration, the asymptotic double (perturbative x Fourier) expansion,
// extraction of the effective coupling G(t) = g0 <a(t)>, and the inverse map
// from a target G(t) to drive sidebands.

#include <array>
#include <string>
#include <vector>

#include "squeezesim/model.hpp"

namespace squeezesim {

struct MeanTrajectory {
  double dt = 0.0;
  double period = 0.0;      // modulation period tau
  std::vector<double> t;    // in units of 1/omega_m
  std::vector<cplx> a;
  std::vector<cplx> b;

  std::size_t size() const { return t.size(); }
  double t_in_periods(std::size_t i) const { return t[i] / period; }
};

struct MeanFieldOptions {
  double record_from = 0.0;  // drop samples before this time
  int sample_stride = 1;
  double overflow_guard = 1e12;
};

/// RK4 integration of the mean-field equations from <a(0)> = <b(0)> = 0.
/// Requires dt <= tau/1000; throws NumericError with the blow-up time when
/// |<a>| exceeds the overflow guard.
MeanTrajectory integrate_meanfield(const SystemParams& params, const DriveSidebands& drive,
                                   double t_end, double dt, const MeanFieldOptions& opts = {});

/// Default mean-field step: tau / 2000.
double default_meanfield_step(const DriveSidebands& drive);

/// Coefficients O_{n,j} g0^j of the expansion sum_j sum_n O_{n,j} g0^j e^{i n Omega t}.
/// Stored already multiplied by g0^j, indexed [j][n + n_max].
struct SidebandAmplitudes {
  int j_max = 0;
  int n_max = 1;
  double Omega = 2.0;
  std::vector<std::vector<cplx>> a_terms;
  std::vector<std::vector<cplx>> b_terms;
  std::array<cplx, 3> a{};  // (a_-1, a_0, a_1): coefficients of e^{i Omega t}, 1, e^{-i Omega t}
  std::array<cplx, 3> b{};
  bool converged = true;
  std::vector<std::string> warnings;

  /// Order-j contribution magnitude (sum over harmonics, both modes).
  double order_norm(int j) const;
  /// Full reconstruction over all retained harmonics and orders.
  cplx a_at(double t) const;
  cplx b_at(double t) const;
};

/// Perturbative Floquet amplitudes. Zeroth order is the linear cavity response
/// with no mechanical amplitude; higher orders follow the convolution recursion.
/// Harmonics with |n| > n_max are dropped at every order.
SidebandAmplitudes floquet_amplitudes(const SystemParams& params, const DriveSidebands& drive,
                                      int j_max, int n_max = 5);

struct CouplingEstimate {
  CouplingSidebands tones;
  double residual = 0.0;  // max |g0<a(t)> - three-tone reconstruction|
  bool settled = true;
};

/// Tones g0 (a_-1, a_0, a_1) projected from the last full period of the
/// trajectory, and the residual of the three-tone fit over that period.
/// settled is false when residual > settle_threshold * |G_0|.
CouplingEstimate effective_coupling(const SystemParams& params, const MeanTrajectory& traj,
                                    double settle_threshold = 1e-2);

/// Tones g0 (a_-1, a_0, a_1) from the expansion; residual measures the dropped
/// harmonics over one period.
CouplingEstimate effective_coupling(const SystemParams& params, const SidebandAmplitudes& amps,
                                    double settle_threshold = 1e-2);

/// max |g0 <a(t)> - target(t)| over samples with t >= t_from.
double coupling_residual(const SystemParams& params, const MeanTrajectory& traj,
                         const CouplingSidebands& target, double Omega, double t_from);

/// Drive-side poles and correction coefficients of the closed-form synthesis map.
struct SynthesisKernel {
  cplx k0, k1, k2, k3, k4;
  cplx s1, s2, s3, s4, s5;
};

SynthesisKernel synthesis_kernel(const SystemParams& params, const CouplingSidebands& target,
                                 double Omega);

enum class SynthesisRule {
  ClosedForm,       // Laplace-domain closed form with the k0..k4 corrections
  HarmonicBalance,  // exact three-tone harmonic balance including <b> + <b>*
};

/// Drive sidebands that produce the target G(t) in the long-time limit.
/// Throws ValidationError for g0 == 0 or complex targets.
DriveSidebands synthesize_drive(const SystemParams& params, const CouplingSidebands& target,
                                double Omega, SynthesisRule rule = SynthesisRule::HarmonicBalance);

/// Diagnostic shift g0 (<b> + <b>*) of the cavity detuning.
double detuning_shift(const SystemParams& params, cplx mean_b);

/// Index of the first period whose samples match the previous period's to
/// rel_tol (max-norm), comparing consecutive blocks of samples_per_period.
/// Returns -1 if no such period exists.
long first_periodic_period(const std::vector<cplx>& samples, std::size_t samples_per_period,
                           double rel_tol = 1e-4);

}  // namespace squeezesim
