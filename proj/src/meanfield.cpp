#include "squeezesim/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include <Eigen/Core>

#include "squeezesim/rk4.hpp"

namespace squeezesim {

namespace {

constexpr cplx I{0.0, 1.0};

using State = Eigen::Vector2cd;

void require_g0_positive(const SystemParams& p, const char* what) {
  if (!(p.g0 > 0.0)) throw ValidationError({std::string(what) + ": g0 must be positive"});
}

}  // namespace

double default_meanfield_step(const DriveSidebands& drive) { return drive.period() / 2000.0; }

MeanTrajectory integrate_meanfield(const SystemParams& params, const DriveSidebands& drive,
                                   double t_end, double dt, const MeanFieldOptions& opts) {
  validate(params);
  validate(drive);
  const double tau = drive.period();
  if (!(dt > 0.0) || dt > tau / 1000.0 * (1.0 + 1e-12))
    throw ValidationError({"meanfield step must satisfy 0 < dt <= tau/1000"});
  if (opts.sample_stride < 1) throw ValidationError({"sample_stride must be >= 1"});

  const cplx phase = std::polar(1.0, params.phi);
  const double da = params.delta_a;
  const double wm = params.omega_m;
  const double ka = 0.5 * params.kappa;
  const double ga = 0.5 * params.gamma_m;
  const double g0 = params.g0;

  auto rhs = [&](double t, const State& y) -> State {
    const cplx a = y(0);
    const cplx b = y(1);
    State dy;
    dy(0) = -I * da * a + I * g0 * a * (b + std::conj(b)) + phase * drive.at(t) - ka * a;
    dy(1) = -I * wm * b + I * g0 * std::norm(a) - ga * b;
    return dy;
  };

  const long steps = std::lround(t_end / dt);
  MeanTrajectory traj;
  traj.dt = dt * opts.sample_stride;
  traj.period = tau;
  const auto keep = static_cast<std::size_t>(std::max(0L, steps) / opts.sample_stride + 2);
  traj.t.reserve(keep);
  traj.a.reserve(keep);
  traj.b.reserve(keep);

  auto record = [&](long k, const State& y) {
    const double t = k * dt;
    if (t + 1e-9 * dt < opts.record_from) return;
    traj.t.push_back(t);
    traj.a.push_back(y(0));
    traj.b.push_back(y(1));
  };

  State y = State::Zero();
  record(0, y);
  for (long k = 0; k < steps; ++k) {
    y = rk4_step(rhs, k * dt, y, dt);
    if (!(std::abs(y(0)) <= opts.overflow_guard) || !std::isfinite(std::abs(y(1))))
      throw NumericError("integrate_meanfield: |<a>| exceeded overflow guard at t = " +
                         std::to_string((k + 1) * dt));
    if ((k + 1) % opts.sample_stride == 0) record(k + 1, y);
  }
  return traj;
}

double SidebandAmplitudes::order_norm(int j) const {
  double s = 0.0;
  for (const auto& v : a_terms.at(j)) s += std::abs(v);
  for (const auto& v : b_terms.at(j)) s += std::abs(v);
  return s;
}

namespace {

cplx reconstruct(const std::vector<std::vector<cplx>>& terms, int n_max, double Omega, double t) {
  cplx acc{};
  for (const auto& order : terms)
    for (int n = -n_max; n <= n_max; ++n) acc += order[n + n_max] * std::polar(1.0, n * Omega * t);
  return acc;
}

}  // namespace

cplx SidebandAmplitudes::a_at(double t) const { return reconstruct(a_terms, n_max, Omega, t); }
cplx SidebandAmplitudes::b_at(double t) const { return reconstruct(b_terms, n_max, Omega, t); }

SidebandAmplitudes floquet_amplitudes(const SystemParams& params, const DriveSidebands& drive,
                                      int j_max, int n_max) {
  validate(params);
  validate(drive);
  if (j_max < 0 || j_max > 20) throw ValidationError({"j_max must lie in [0, 20]"});
  if (n_max < 1) throw ValidationError({"n_max must be >= 1"});

  SidebandAmplitudes out;
  out.j_max = j_max;
  out.n_max = n_max;
  out.Omega = drive.Omega;
  if (params.g0 > 0.01)
    out.warnings.push_back("g0 = " + std::to_string(params.g0) +
                           " is not small against omega_m; expansion may be inaccurate");

  const int width = 2 * n_max + 1;
  const double W = drive.Omega;
  const double g0 = params.g0;
  const cplx phase = std::polar(1.0, params.phi);
  auto cav_den = [&](int n) { return I * (params.delta_a + n * W) + 0.5 * params.kappa; };
  auto mech_den = [&](int n) { return I * (params.omega_m + n * W) + 0.5 * params.gamma_m; };
  auto in_range = [&](int n) { return n >= -n_max && n <= n_max; };

  out.a_terms.assign(j_max + 1, std::vector<cplx>(width));
  out.b_terms.assign(j_max + 1, std::vector<cplx>(width));

  // eps_{-n} drives harmonic e^{i n Omega t}.
  const std::map<int, cplx> eps{{1, drive.eps_minus1}, {0, drive.eps_0}, {-1, drive.eps_plus1}};
  for (const auto& [n, e] : eps)
    if (in_range(n)) out.a_terms[0][n + n_max] = phase * e / cav_den(n);

  for (int j = 1; j <= j_max && g0 != 0.0; ++j) {
    auto& aj = out.a_terms[j];
    auto& bj = out.b_terms[j];
    for (int n = -n_max; n <= n_max; ++n) {
      cplx sa{}, sb{};
      for (int k = 0; k <= j - 1; ++k) {
        const auto& a_lo = out.a_terms[j - k - 1];
        const auto& a_k = out.a_terms[k];
        const auto& b_k = out.b_terms[k];
        for (int m = -n_max; m <= n_max; ++m) {
          if (in_range(n + m)) {
            sa += a_lo[n + m + n_max] * std::conj(b_k[m + n_max]);
            sb += a_lo[n + m + n_max] * std::conj(a_k[m + n_max]);
          }
          if (in_range(n - m)) sa += a_lo[n - m + n_max] * b_k[m + n_max];
        }
      }
      aj[n + n_max] = I * g0 * sa / cav_den(n);
      bj[n + n_max] = I * g0 * sb / mech_den(n);
    }
  }

  for (int j = 0; j <= j_max; ++j) {
    for (int slot = 0; slot < 3; ++slot) {
      const int n = 1 - slot;  // slot 0 <-> e^{i Omega t}
      if (!in_range(n)) continue;
      out.a[slot] += out.a_terms[j][n + n_max];
      out.b[slot] += out.b_terms[j][n + n_max];
    }
  }

  for (int j = 1; j <= j_max; ++j) {
    const double prev = out.order_norm(j - 1);
    const double cur = out.order_norm(j);
    if (prev > 0.0 && cur >= prev) {
      out.converged = false;
      out.warnings.push_back("order " + std::to_string(j) + " contribution did not decrease");
      break;
    }
  }
  return out;
}

namespace {

cplx three_tone(const CouplingSidebands& c, double Omega, double t) { return c.at(t, Omega); }

}  // namespace

CouplingEstimate effective_coupling(const SystemParams& params, const MeanTrajectory& traj,
                                    double settle_threshold) {
  if (traj.size() < 2 || !(traj.dt > 0.0)) throw ValidationError({"trajectory is empty"});
  const double per_step = traj.period / traj.dt;
  const auto n = static_cast<std::size_t>(std::lround(per_step));
  if (std::abs(per_step - static_cast<double>(n)) > 1e-6 * per_step || n < 8)
    throw ValidationError({"trajectory sampling must divide the modulation period into >= 8 steps"});
  if (traj.size() < n + 1) throw ValidationError({"trajectory shorter than one modulation period"});

  const double Omega = 2.0 * std::numbers::pi / traj.period;
  const std::size_t first = traj.size() - 1 - n;
  std::array<cplx, 3> c{};
  for (std::size_t k = first; k < first + n; ++k) {
    const double t = traj.t[k];
    const cplx g = params.g0 * traj.a[k];
    for (int slot = 0; slot < 3; ++slot) c[slot] += g * std::polar(1.0, -(1 - slot) * Omega * t);
  }
  for (auto& v : c) v /= static_cast<double>(n);

  CouplingEstimate est;
  est.tones = {c[0], c[1], c[2]};
  for (std::size_t k = first; k < traj.size(); ++k)
    est.residual = std::max(est.residual,
                            std::abs(params.g0 * traj.a[k] - three_tone(est.tones, Omega, traj.t[k])));
  est.settled = est.residual <= settle_threshold * std::abs(est.tones.g_0);
  if (est.tones.g_0 == cplx{} && est.residual == 0.0) est.settled = true;
  return est;
}

CouplingEstimate effective_coupling(const SystemParams& params, const SidebandAmplitudes& amps,
                                    double settle_threshold) {
  CouplingEstimate est;
  est.tones = {params.g0 * amps.a[0], params.g0 * amps.a[1], params.g0 * amps.a[2]};
  const double tau = 2.0 * std::numbers::pi / amps.Omega;
  constexpr int kSamples = 256;
  for (int k = 0; k < kSamples; ++k) {
    const double t = tau * k / kSamples;
    est.residual = std::max(
        est.residual, std::abs(params.g0 * amps.a_at(t) - three_tone(est.tones, amps.Omega, t)));
  }
  est.settled = est.residual <= settle_threshold * std::abs(est.tones.g_0) || est.residual == 0.0;
  return est;
}

double coupling_residual(const SystemParams& params, const MeanTrajectory& traj,
                         const CouplingSidebands& target, double Omega, double t_from) {
  double r = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.t[k] + 1e-9 * traj.dt < t_from) continue;
    r = std::max(r, std::abs(params.g0 * traj.a[k] - target.at(traj.t[k], Omega)));
  }
  return r;
}

SynthesisKernel synthesis_kernel(const SystemParams& p, const CouplingSidebands& target,
                                 double Omega) {
  require_g0_positive(p, "synthesis_kernel");
  const cplx gm1 = target.g_minus1;
  const cplx g0c = target.g_0;
  const cplx g1 = target.g_plus1;
  const double g0 = p.g0;

  SynthesisKernel k;
  k.s1 = -I * p.omega_m - 0.5 * p.gamma_m;
  k.s2 = 2.0 * I * Omega;
  k.s3 = -2.0 * I * Omega;
  k.s4 = I * Omega;
  k.s5 = -I * Omega;
  k.k0 = -I * (gm1 * gm1 + g0c * g0c + g1 * g1) / (2.0 * g0 * k.s1);
  k.k1 = -I * gm1 * g1 * k.s2 / (g0 * (k.s1 - k.s2) * (k.s2 - k.s3));
  k.k2 = I * gm1 * g1 * k.s3 / (g0 * (k.s1 - k.s3) * (k.s2 - k.s3));
  k.k3 = -I * g0c * (gm1 + g1) * k.s4 / (g0 * (k.s1 - k.s4) * (k.s4 - k.s5));
  k.k4 = I * g0c * (gm1 + g1) * k.s5 / (g0 * (k.s1 - k.s5) * (k.s4 - k.s5));
  return k;
}

namespace {

DriveSidebands closed_form(const SystemParams& p, const CouplingSidebands& t, double Omega) {
  const auto k = synthesis_kernel(p, t, Omega);
  const double da = p.delta_a;
  const double ka = 0.5 * p.kappa;
  const cplx k12 = k.k1 + k.k2;
  const cplx k34 = k.k3 + k.k4;
  DriveSidebands d;
  d.Omega = Omega;
  d.eps_minus1 = t.g_minus1 / p.g0 * (I * (Omega + da) + ka) -
                 I * (2.0 * k.k0 * t.g_minus1 + k34 * t.g_0 + k12 * t.g_plus1);
  d.eps_0 = t.g_0 / p.g0 * (I * da + ka) - I * (k34 * t.g_minus1 + 2.0 * k.k0 * t.g_0 + k34 * t.g_plus1);
  d.eps_plus1 = t.g_plus1 / p.g0 * (I * (da - Omega) + ka) -
                I * (k12 * t.g_minus1 + k34 * t.g_0 + 2.0 * k.k0 * t.g_plus1);
  return d;
}

// Projects the mean-field cavity equation onto harmonics n = -1, 0, 1 with
// <a> fixed to the target three-tone waveform and <b> its exact periodic response.
DriveSidebands harmonic_balance(const SystemParams& p, const CouplingSidebands& t, double Omega) {
  constexpr int N = 4;  // |a|^2 and <b> carry at most two harmonics, a(b + b*) three
  auto idx = [](int n) { return n + N; };
  std::array<cplx, 2 * N + 1> a{}, f{}, b{}, x{}, prod{};
  a[idx(1)] = t.g_minus1 / p.g0;
  a[idx(0)] = t.g_0 / p.g0;
  a[idx(-1)] = t.g_plus1 / p.g0;

  for (int n = -N; n <= N; ++n)
    for (int m = -N; m <= N; ++m)
      if (n + m >= -N && n + m <= N) f[idx(n)] += a[idx(n + m)] * std::conj(a[idx(m)]);
  for (int n = -N; n <= N; ++n)
    b[idx(n)] = I * p.g0 * f[idx(n)] / (I * (p.omega_m + n * Omega) + 0.5 * p.gamma_m);
  for (int n = -N; n <= N; ++n) x[idx(n)] = b[idx(n)] + std::conj(b[idx(-n)]);
  for (int n = -N; n <= N; ++n)
    for (int m = -N; m <= N; ++m)
      if (n - m >= -N && n - m <= N) prod[idx(n)] += a[idx(n - m)] * x[idx(m)];

  auto eps = [&](int n) {
    return (I * (p.delta_a + n * Omega) + 0.5 * p.kappa) * a[idx(n)] - I * p.g0 * prod[idx(n)];
  };
  DriveSidebands d;
  d.Omega = Omega;
  d.eps_minus1 = eps(1);
  d.eps_0 = eps(0);
  d.eps_plus1 = eps(-1);
  return d;
}

}  // namespace

DriveSidebands synthesize_drive(const SystemParams& params, const CouplingSidebands& target,
                                double Omega, SynthesisRule rule) {
  validate(params);
  require_g0_positive(params, "synthesize_drive");
  if (!(Omega > 0.0)) throw ValidationError({"Omega must be positive"});
  if (!target.is_real()) throw ValidationError({"synthesize_drive needs real target tones"});

  DriveSidebands d = rule == SynthesisRule::ClosedForm ? closed_form(params, target, Omega)
                                                       : harmonic_balance(params, target, Omega);
  // The drive enters the cavity as e^{i phi} eps_L(t).
  const cplx unphase = std::polar(1.0, -params.phi);
  d.eps_minus1 *= unphase;
  d.eps_0 *= unphase;
  d.eps_plus1 *= unphase;
  return d;
}

double detuning_shift(const SystemParams& params, cplx mean_b) {
  return params.g0 * 2.0 * mean_b.real();
}

long first_periodic_period(const std::vector<cplx>& samples, std::size_t samples_per_period,
                           double rel_tol) {
  if (samples_per_period == 0) return -1;
  const std::size_t periods = samples.size() / samples_per_period;
  for (std::size_t k = 1; k < periods; ++k) {
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < samples_per_period; ++i) {
      const cplx cur = samples[k * samples_per_period + i];
      const cplx prev = samples[(k - 1) * samples_per_period + i];
      diff = std::max(diff, std::abs(cur - prev));
      scale = std::max(scale, std::abs(cur));
    }
    if (scale > 0.0 && diff <= rel_tol * scale) return static_cast<long>(k);
  }
  return -1;
}

}  // namespace squeezesim
