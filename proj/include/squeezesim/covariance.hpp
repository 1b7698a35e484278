#pragma once

// Drift/diffusion construction and covariance dynamics of the linearized
// fluctuations, both in the rotating frame (time-independent drift) and in
// the lab frame with the full periodic coupling.

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "squeezesim/model.hpp"

namespace squeezesim {

enum class DriftFlavor { Rwa, Full };

struct DriftMatrix {
  Mat4 m = Mat4::Zero();
  DriftFlavor flavor = DriftFlavor::Rwa;
  double time = 0.0;  // only meaningful for Full
};

struct DiffusionMatrix {
  Eigen::Vector4d diag = Eigen::Vector4d::Zero();
  Mat4 matrix() const { return diag.asDiagonal(); }
};

/// Rotating-frame drift with G_- = G0 - G1 and G_+ = G0 + G1.
DriftMatrix drift_rwa(const CouplingSidebands& couplings, const SystemParams& params);

/// Lab-frame drift at time t, with G(t) built from the three tones.
DriftMatrix drift_full(double t, const CouplingSidebands& couplings, const SystemParams& params,
                       double Omega);

/// diag(kappa(n_a+1/2), kappa(n_a+1/2), gamma_m(n_m+1/2), gamma_m(n_m+1/2)).
DiffusionMatrix diffusion(const SystemParams& params);

using DriftSource = std::function<Mat4(double)>;

DriftSource constant_drift(const DriftMatrix& drift);
DriftSource full_drift_source(const CouplingSidebands& couplings, const SystemParams& params,
                              double Omega);

struct EvolveOptions {
  int sample_stride = 1;       // keep every n-th step
  double record_from = 0.0;    // drop samples before this time
  double psd_tolerance = 1e-9; // allowed negative eigenvalue of V at samples
};

struct CovarianceSeries {
  std::vector<double> t;
  std::vector<Mat4> v;

  std::size_t size() const { return t.size(); }
  CovarianceMatrix at(std::size_t i) const { return CovarianceMatrix{v[i]}; }
};

/// Integrates dV/dt = M(t) V + V M(t)^T + D with fixed-step RK4 from V(0) = v0,
/// re-symmetrizing after every step. t_end is rounded to a whole number of steps.
CovarianceSeries evolve_cm(const CovarianceMatrix& v0, const DriftSource& drift,
                           const DiffusionMatrix& d, double t_end, double dt,
                           const EvolveOptions& opts = {});

/// Unique symmetric solution of M V + V M^T + D = 0, by a direct solve over
/// the ten independent entries. Throws StabilityError unless M is strictly stable.
CovarianceMatrix steady_cm(const DriftMatrix& drift, const DiffusionMatrix& d);

/// Default step for lab-frame evolution: one mechanical period over 200.
double default_full_drift_step(const SystemParams& params);

}  // namespace squeezesim
