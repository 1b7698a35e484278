#pragma once

// Closed-form steady state after adiabatic elimination of the cavity, valid
// for kappa >> sqrt(G0^2 - G1^2), and the optimal sideband ratio G1/G0.

#include <string>
#include <vector>

#include "squeezesim/model.hpp"

namespace squeezesim {

struct AdiabaticResult {
  double r = 0.0;                  // squeezing parameter arctanh(G1/G0)
  double coupling = 0.0;           // Bogoliubov-cavity coupling sqrt(G0^2 - G1^2)
  double h = 0.0;                  // effective Bogoliubov decay 2 G^2/kappa + gamma_m/2
  double variance = 0.0;           // steady <dX_b^2>
  double bogoliubov_variance = 0.0;// steady <dQ_beta^2>
  bool valid = false;              // kappa >= 10 * coupling
};

/// Steady position variance. At G1 == G0 returns the thermal value n_m + 1/2.
/// Throws StabilityError unless 0 <= G1 <= G0 with G0 > 0.
AdiabaticResult adiabatic_variance(const CouplingSidebands& couplings, const SystemParams& params);

/// Steady variance of the Bogoliubov position quadrature Q_beta.
double adiabatic_bogoliubov_variance(const CouplingSidebands& couplings, const SystemParams& params);

/// Root in (0, 1) of (1 + 2 n_m) x - C (1 - x^2) e^{-2 arctanh x} = 0 with
/// C = 4 G0^2/(kappa gamma_m), by bisection on [1e-9, 1 - 1e-12] down to the
/// limit of double resolution. Throws NumericError without a sign change.
double optimal_ratio_transcendental(const SystemParams& params, double g0c, double n_m);

/// Left-hand side of the optimality condition at ratio x.
double optimal_ratio_residual(double x, double cooperativity, double n_m);

/// Large-cooperativity approximation sqrt(1 + q) - sqrt(q), q = (1 + 2 n_m)/C.
/// Appends a warning when C < 100.
double optimal_ratio_closed_form(const SystemParams& params, double g0c, double n_m,
                                 std::vector<std::string>* warnings = nullptr);

}  // namespace squeezesim
