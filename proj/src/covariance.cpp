#include "squeezesim/covariance.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "squeezesim/rk4.hpp"

namespace squeezesim {

DriftMatrix drift_rwa(const CouplingSidebands& c, const SystemParams& p) {
  if (!c.is_real()) throw ValidationError({"rotating-frame drift needs real coupling tones"});
  const double gm = c.g_minus();
  const double gp = c.g_plus();
  const double ka = 0.5 * p.kappa;
  const double ga = 0.5 * p.gamma_m;
  DriftMatrix d;
  d.flavor = DriftFlavor::Rwa;
  d.m << -ka, 0.0, 0.0, -gm,
         0.0, -ka, gp, 0.0,
         0.0, -gm, -ga, 0.0,
         gp, 0.0, 0.0, -ga;
  return d;
}

DriftMatrix drift_full(double t, const CouplingSidebands& c, const SystemParams& p, double Omega) {
  const cplx two_g = 2.0 * c.at(t, Omega);
  const double re = two_g.real();
  const double im = two_g.imag();
  const double ka = 0.5 * p.kappa;
  const double ga = 0.5 * p.gamma_m;
  const double da = p.delta_eff;
  const double wm = p.omega_m;
  DriftMatrix d;
  d.flavor = DriftFlavor::Full;
  d.time = t;
  d.m << -ka, da, -im, 0.0,
         -da, -ka, re, 0.0,
         0.0, 0.0, -ga, wm,
         re, im, -wm, -ga;
  return d;
}

DiffusionMatrix diffusion(const SystemParams& p) {
  DiffusionMatrix d;
  const double dc = p.kappa * (p.n_a + 0.5);
  const double dm = p.gamma_m * (p.n_m + 0.5);
  d.diag << dc, dc, dm, dm;
  return d;
}

DriftSource constant_drift(const DriftMatrix& drift) {
  return [m = drift.m](double) { return m; };
}

DriftSource full_drift_source(const CouplingSidebands& c, const SystemParams& p, double Omega) {
  return [c, p, Omega](double t) { return drift_full(t, c, p, Omega).m; };
}

double default_full_drift_step(const SystemParams& params) {
  return 2.0 * std::numbers::pi / params.omega_m / 200.0;
}

CovarianceSeries evolve_cm(const CovarianceMatrix& v0, const DriftSource& drift,
                           const DiffusionMatrix& d, double t_end, double dt,
                           const EvolveOptions& opts) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw ValidationError({"evolve_cm needs dt > 0 and t_end >= 0"});
  if (opts.sample_stride < 1) throw ValidationError({"sample_stride must be >= 1"});
  if (!v0.v.isApprox(v0.v.transpose(), 1e-12))
    throw ValidationError({"initial covariance matrix must be symmetric"});
  {
    Eigen::SelfAdjointEigenSolver<Mat4> es(v0.v, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw ValidationError({"initial covariance matrix must be positive definite"});
  }

  const long steps = std::lround(t_end / dt);
  const Mat4 dm = d.matrix();
  auto rhs = [&](double t, const Mat4& v) -> Mat4 {
    const Mat4 m = drift(t);
    return m * v + v * m.transpose() + dm;
  };

  CovarianceSeries out;
  const auto keep = static_cast<std::size_t>(steps / opts.sample_stride + 2);
  out.t.reserve(keep);
  out.v.reserve(keep);

  auto record = [&](long k, const Mat4& v) {
    const double t = k * dt;
    if (t + 1e-12 * dt < opts.record_from) return;
    Eigen::SelfAdjointEigenSolver<Mat4> es(v, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -opts.psd_tolerance)
      throw NumericError("evolve_cm: covariance lost positive semidefiniteness at t = " +
                         std::to_string(t));
    out.t.push_back(t);
    out.v.push_back(v);
  };

  Mat4 v = v0.v;
  record(0, v);
  for (long k = 0; k < steps; ++k) {
    v = rk4_step(rhs, k * dt, v, dt);
    v = 0.5 * (v + v.transpose()).eval();
    if (!v.allFinite())
      throw NumericError("evolve_cm: non-finite covariance at t = " + std::to_string((k + 1) * dt));
    if ((k + 1) % opts.sample_stride == 0 || k + 1 == steps) record(k + 1, v);
  }
  return out;
}

CovarianceMatrix steady_cm(const DriftMatrix& drift, const DiffusionMatrix& d) {
  const double abscissa = spectral_abscissa(drift.m);
  if (!(abscissa < 0.0))
    throw StabilityError("steady_cm: drift is not strictly stable (max Re eig = " +
                         std::to_string(abscissa) + "); no steady state");

  // Upper-triangle index map for the 10 unknowns of a symmetric 4x4.
  std::array<std::array<int, 4>, 4> idx{};
  int n = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) idx[i][j] = idx[j][i] = n++;

  const Mat4& m = drift.m;
  const Mat4 dm = d.matrix();
  Eigen::Matrix<double, 10, 10> a = Eigen::Matrix<double, 10, 10>::Zero();
  Eigen::Matrix<double, 10, 1> b;
  for (int p = 0; p < 4; ++p) {
    for (int q = p; q < 4; ++q) {
      const int row = idx[p][q];
      // (M V)_pq + (V M^T)_pq = sum_k M_pk V_kq + V_pk M_qk
      for (int k = 0; k < 4; ++k) {
        a(row, idx[k][q]) += m(p, k);
        a(row, idx[p][k]) += m(q, k);
      }
      b(row) = -dm(p, q);
    }
  }
  const Eigen::Matrix<double, 10, 1> x = a.fullPivLu().solve(b);

  CovarianceMatrix cm;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) cm.v(i, j) = x(idx[i][j]);
  return cm;
}

}  // namespace squeezesim
