#include "squeezesim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "squeezesim/covariance.hpp"

namespace squeezesim {

namespace {

constexpr cplx I{0.0, 1.0};

void require_real(const CouplingSidebands& c) {
  if (!c.is_real()) throw ValidationError({"spectral quantities need real coupling tones"});
}

void require_decaying(const CouplingSidebands& c, const SystemParams& p) {
  const double abscissa = spectral_abscissa(drift_rwa(c, p).m);
  if (!(abscissa < 0.0))
    throw StabilityError("steady variance undefined: rotating-frame drift has max Re eig = " +
                         std::to_string(abscissa));
}

}  // namespace

SpectrumCoeffs transfer_coeffs(double omega, const CouplingSidebands& c, const SystemParams& p) {
  require_real(c);
  const double gm = c.g_minus();
  const double gp = c.g_plus();
  const cplx den = 4.0 * gm * gp + (p.gamma_m - 2.0 * I * omega) * (p.kappa - 2.0 * I * omega);
  if (std::abs(den) <= 1e-300 ||
      std::abs(den) <= 1e-14 * (4.0 * std::abs(gm * gp) + std::abs(p.gamma_m * p.kappa)))
    throw NumericError("transfer_coeffs: pole on the real axis at omega = " + std::to_string(omega));
  SpectrumCoeffs s;
  s.B = -4.0 * gm * std::sqrt(p.kappa) / den;
  s.E = 2.0 * (p.kappa - 2.0 * I * omega) * std::sqrt(p.gamma_m) / den;
  return s;
}

double position_spectrum(double omega, const CouplingSidebands& c, const SystemParams& p) {
  const auto pos = transfer_coeffs(omega, c, p);
  const auto neg = transfer_coeffs(-omega, c, p);
  const cplx s = (pos.A * neg.A + pos.B * neg.B) * (p.n_a + 0.5) +
                 (pos.E * neg.E + pos.F * neg.F) * (p.n_m + 0.5);
  return s.real();
}

RationalSpectrum rational_spectrum(const CouplingSidebands& c, const SystemParams& p) {
  require_real(c);
  const double gm = c.g_minus();
  const double gp = c.g_plus();
  const double c0 = 4.0 * gm * gp + p.gamma_m * p.kappa;
  const double s = p.gamma_m + p.kappa;
  const Polynomial den_pos({c0, -2.0 * I * s, -4.0});
  const Polynomial den_neg({c0, 2.0 * I * s, -4.0});
  const double na = p.n_a + 0.5;
  const double nm = p.n_m + 0.5;
  const Polynomial num({16.0 * gm * gm * p.kappa * na + 4.0 * p.gamma_m * nm * p.kappa * p.kappa, 0.0,
                        16.0 * p.gamma_m * nm});
  return {num, den_pos * den_neg};
}

double steady_variance_quadrature(const CouplingSidebands& c, const SystemParams& p) {
  require_real(c);
  using boost::math::quadrature::gauss_kronrod;
  const double gm = std::abs(c.g_minus());
  const double gp = std::abs(c.g_plus());
  const double window = 10.0 * std::max({p.kappa, gp, p.gamma_m});

  std::vector<double> cuts{0.0, window};
  const double c0 = 4.0 * c.g_minus() * c.g_plus() + p.gamma_m * p.kappa;
  for (double scale : {0.5 * p.gamma_m, 0.5 * p.kappa, gm, gp, std::sqrt(gm * gp),
                       0.5 * std::sqrt(std::abs(c0)), 0.25 * (p.kappa + p.gamma_m)}) {
    for (double f : {0.5, 1.0, 2.0}) {
      const double x = f * scale;
      if (x > 0.0 && x < window) cuts.push_back(x);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  // Octave breakpoints from the smallest scale up keep every segment scale-free.
  for (double x = cuts[1]; x < window; x *= 2.0) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto S = [&](double w) { return position_spectrum(w, c, p); };
  auto tail = [&](double u) { return S(1.0 / u) / (u * u); };  // [window, inf) with u = 1/w
  using GK = gauss_kronrod<double, 61>;

  // Each segment is mapped onto [0, 1] with its Jacobian: the error estimate
  // carries an absolute floor near eps * max|f| that does not shrink with the
  // subinterval width, so the integrand itself must carry the segment's scale.
  struct Segment {
    double lo, hi;
    bool is_tail;
  };
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) segs.push_back({cuts[i], cuts[i + 1], false});
  segs.push_back({0.0, 1.0 / window, true});
  auto mapped = [&](const Segment& sg) {
    return [&, sg](double s) {
      const double x = sg.lo + (sg.hi - sg.lo) * s;
      return (sg.hi - sg.lo) * (sg.is_tail ? tail(x) : S(x));
    };
  };

  // Segments holding a small share of the total get a proportionally looser target.
  std::vector<double> coarse(segs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < segs.size(); ++i)
    total += coarse[i] = std::abs(GK::integrate(mapped(segs[i]), 0.0, 1.0, 0));
  constexpr unsigned kDepth = 15;
  constexpr double kTol = 1e-13;

  double half = 0.0;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const double tol = coarse[i] > 0.0 ? std::min(1e-3, kTol * total / coarse[i]) : 1e-3;
    half += GK::integrate(mapped(segs[i]), 0.0, 1.0, kDepth, tol);
  }
  return half / std::numbers::pi;  // (1/2pi) * 2 * half-line integral
}

double steady_variance_residues(const CouplingSidebands& c, const SystemParams& p) {
  require_decaying(c, p);
  const auto rs = rational_spectrum(c, p);
  const auto r = integrate_rational(rs.numerator, rs.denominator);
  if (!r) return steady_variance_quadrature(c, p);
  return r->value / (2.0 * std::numbers::pi);
}

SpectralVariance steady_variance_spectral(const CouplingSidebands& c, const SystemParams& p,
                                          double cross_check_tol) {
  require_decaying(c, p);
  SpectralVariance out;
  const auto rs = rational_spectrum(c, p);
  const auto r = integrate_rational(rs.numerator, rs.denominator);
  out.quadrature = steady_variance_quadrature(c, p);
  if (r) {
    out.value = r->value / (2.0 * std::numbers::pi);
  } else {
    out.value = out.quadrature;
    out.from_residues = false;
  }
  out.discrepancy = std::abs(out.value - out.quadrature) / std::abs(out.value);
  if (out.discrepancy > cross_check_tol)
    throw NumericError("steady_variance_spectral: residue and quadrature disagree (rel " +
                       std::to_string(out.discrepancy) + ")");
  return out;
}

}  // namespace squeezesim
