#include "squeezesim/adiabatic.hpp"

#include <cmath>
#include <limits>

namespace squeezesim {

namespace {

void require_adiabatic_domain(const CouplingSidebands& c) {
  if (!c.is_real()) throw ValidationError({"adiabatic formulas need real coupling tones"});
  const double g0 = c.g_0.real();
  const double g1 = c.g_plus1.real();
  if (!(g0 > 0.0) || g1 < 0.0 || g1 > g0)
    throw StabilityError("adiabatic formulas need 0 <= G1 <= G0 with G0 > 0");
}

}  // namespace

AdiabaticResult adiabatic_variance(const CouplingSidebands& c, const SystemParams& p) {
  require_adiabatic_domain(c);
  const double g0 = c.g_0.real();
  const double g1 = c.g_plus1.real();
  const double x = g1 / g0;

  AdiabaticResult res;
  res.coupling = c.bogoliubov_coupling();
  res.h = 2.0 * res.coupling * res.coupling / p.kappa + 0.5 * p.gamma_m;
  res.valid = p.kappa >= 10.0 * res.coupling;
  const double na = p.n_a + 0.5;
  const double nm = p.n_m + 0.5;
  const double cav = 2.0 * res.coupling * res.coupling / (res.h * p.kappa);
  const double mech = p.gamma_m / (2.0 * res.h);

  if (x == 1.0) {
    // coupling -> 0, r -> infinity: the e^{-2r} term vanishes and h -> gamma_m/2.
    res.r = std::numeric_limits<double>::infinity();
    res.variance = nm;
    res.bogoliubov_variance = std::numeric_limits<double>::infinity();
    return res;
  }
  res.r = std::atanh(x);
  const double e2r = (1.0 + x) / (1.0 - x);  // e^{2 arctanh x}
  res.variance = cav / e2r * na + mech * nm;
  res.bogoliubov_variance = cav * na + mech * e2r * nm;
  return res;
}

double adiabatic_bogoliubov_variance(const CouplingSidebands& c, const SystemParams& p) {
  return adiabatic_variance(c, p).bogoliubov_variance;
}

double optimal_ratio_residual(double x, double cooperativity, double n_m) {
  return (1.0 + 2.0 * n_m) * x - cooperativity * (1.0 - x * x) * std::exp(-2.0 * std::atanh(x));
}

double optimal_ratio_transcendental(const SystemParams& p, double g0c, double n_m) {
  const double C = cooperativity(p, g0c);
  if (!(C > 0.0)) throw NumericError("optimal_ratio_transcendental: cooperativity must be positive");
  double lo = 1e-9;
  double hi = 1.0 - 1e-12;
  double flo = optimal_ratio_residual(lo, C, n_m);
  const double fhi = optimal_ratio_residual(hi, C, n_m);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw NumericError("optimal_ratio_transcendental: root not bracketed in [1e-9, 1 - 1e-12]");

  // Bisect until the bracket cannot shrink; this is far below 1e-10 and keeps
  // the substituted residual small even where the slope is ~C.
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = optimal_ratio_residual(mid, C, n_m);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(flo) <= std::abs(optimal_ratio_residual(hi, C, n_m)) ? lo : hi;
}

double optimal_ratio_closed_form(const SystemParams& p, double g0c, double n_m,
                                 std::vector<std::string>* warnings) {
  const double C = cooperativity(p, g0c);
  if (warnings && C < 100.0)
    warnings->push_back("closed-form optimal ratio assumes large cooperativity; C = " +
                        std::to_string(C));
  const double q = (1.0 + 2.0 * n_m) / C;
  return std::sqrt(1.0 + q) - std::sqrt(q);
}

}  // namespace squeezesim
