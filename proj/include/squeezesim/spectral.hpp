#pragma once

// Frequency-domain steady state of the rotating-frame dynamics: transfer
// coefficients of the mechanical position, its fluctuation spectrum, and the
// variance as the spectrum's integral.

#include "squeezesim/model.hpp"
#include "squeezesim/polynomial.hpp"

namespace squeezesim {

/// dX_b(w) = A X_a^in + B Y_a^in + E X_b^in + F Y_b^in. A and F vanish.
struct SpectrumCoeffs {
  cplx A{}, B{}, E{}, F{};
};

/// Throws NumericError when the shared denominator vanishes at the given real w.
SpectrumCoeffs transfer_coeffs(double omega, const CouplingSidebands& couplings,
                               const SystemParams& params);

/// S(w) = [A(w)A(-w) + B(w)B(-w)](n_a + 1/2) + [E(w)E(-w) + F(w)F(-w)](n_m + 1/2).
double position_spectrum(double omega, const CouplingSidebands& couplings,
                         const SystemParams& params);

/// S(w) as numerator/denominator polynomials in w.
struct RationalSpectrum {
  Polynomial numerator;
  Polynomial denominator;
};
RationalSpectrum rational_spectrum(const CouplingSidebands& couplings, const SystemParams& params);

struct SpectralVariance {
  double value = 0.0;        // residue evaluation (quadrature if roots repeat)
  double quadrature = 0.0;   // adaptive Gauss-Kronrod evaluation
  double discrepancy = 0.0;  // |value - quadrature| / |value|
  bool from_residues = true;
};

/// (1/2pi) * integral of S over the real line, two ways. Throws NumericError
/// when the two disagree by more than cross_check_tol (relative).
SpectralVariance steady_variance_spectral(const CouplingSidebands& couplings,
                                          const SystemParams& params,
                                          double cross_check_tol = 1e-8);

/// Residue path only, falling back to quadrature on repeated roots.
double steady_variance_residues(const CouplingSidebands& couplings, const SystemParams& params);

/// Adaptive quadrature path only: window |w| <= 10 max(kappa, G_+, gamma_m)
/// split at the system's rate scales, plus the tail mapped through u = 1/w.
double steady_variance_quadrature(const CouplingSidebands& couplings, const SystemParams& params);

}  // namespace squeezesim
