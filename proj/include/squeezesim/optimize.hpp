#pragma once

// Sideband-ratio optimization and parameter sweeps of the steady squeezing.
// Objective evaluations go through the residue path of the spectral variance.

#include <optional>
#include <string>
#include <vector>

#include "squeezesim/model.hpp"
#include "squeezesim/parallel.hpp"

namespace squeezesim {

struct RatioOptimum {
  double ratio = 0.0;
  double variance = 0.0;
  bool unimodal = true;  // single sign change of the coarse-scan gradient
};

/// Minimizes the steady position variance over G1/G0 in [0, 1 - 1e-9]:
/// 64-point scan, then golden-section refinement to 1e-6 in ratio.
RatioOptimum optimize_ratio_numeric(const SystemParams& params, double g0c, double n_m);

struct SweepResult {
  std::string variable;
  std::vector<double> points;
  std::vector<double> variance;
  std::vector<double> occupancy;                   // Bogoliubov <beta^dag beta>
  std::vector<double> ratio;                       // G1/G0 used at each point
  std::optional<std::vector<double>> adiabatic;    // closed-form variance when defined

  std::size_t size() const { return points.size(); }
  std::vector<double> db() const;
};

/// Throws ValidationError unless points are strictly increasing.
void require_increasing(const std::vector<double>& points, const char* what);

/// Fixed G0, varying G1/G0 over grid (each in [0, 1)).
SweepResult sweep_ratio(const SystemParams& params, double g0c, double n_m,
                        const std::vector<double>& grid, Execution exec = Execution::OpenMP);

/// Optimized ratio at each G0.
SweepResult sweep_g0(const SystemParams& params, double n_m, const std::vector<double>& grid,
                     Execution exec = Execution::OpenMP);

/// Optimized ratio at each cooperativity C, with G0 = sqrt(C kappa gamma_m / 4).
SweepResult sweep_cooperativity(const SystemParams& params, double n_m,
                                const std::vector<double>& grid,
                                Execution exec = Execution::OpenMP);

/// Fixed G0 and ratio, varying the mechanical bath occupancy.
SweepResult sweep_nm(const SystemParams& params, double g0c, double ratio,
                     const std::vector<double>& grid, Execution exec = Execution::OpenMP);

/// Linearly or logarithmically spaced grid including both endpoints.
std::vector<double> linspace(double start, double stop, int count);
std::vector<double> logspace(double start, double stop, int count);

}  // namespace squeezesim
