#include "squeezesim/model.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "squeezesim/covariance.hpp"

namespace squeezesim {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << "; ";
    os << items[i];
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error("invalid parameters: " + join(violations)), violations_(std::move(violations)) {}

cplx DriveSidebands::at(double t) const {
  const cplx phase = std::polar(1.0, Omega * t);
  return eps_minus1 * phase + eps_0 + eps_plus1 * std::conj(phase);
}

cplx CouplingSidebands::at(double t, double Omega) const {
  const cplx phase = std::polar(1.0, Omega * t);
  return g_minus1 * phase + g_0 + g_plus1 * std::conj(phase);
}

double CouplingSidebands::bogoliubov_coupling() const {
  const double diff = std::norm(g_0) - std::norm(g_plus1);
  return diff > 0.0 ? std::sqrt(diff) : 0.0;
}

double CouplingSidebands::squeezing_parameter() const {
  if (g_0.real() == 0.0) return 0.0;
  return std::atanh(g_plus1.real() / g_0.real());
}

bool CouplingSidebands::is_real(double tol) const {
  const double scale = std::max({std::abs(g_minus1), std::abs(g_0), std::abs(g_plus1), 1e-300});
  return std::abs(g_minus1.imag()) <= tol * scale && std::abs(g_0.imag()) <= tol * scale &&
         std::abs(g_plus1.imag()) <= tol * scale;
}

double CovarianceMatrix::mechanical_determinant() const {
  return v(2, 2) * v(3, 3) - v(2, 3) * v(3, 2);
}

CovarianceMatrix CovarianceMatrix::initial_state(const SystemParams& p) {
  CovarianceMatrix cm;
  cm.v = Eigen::Vector4d(0.5, 0.5, p.n_m + 0.5, p.n_m + 0.5).asDiagonal();
  return cm;
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Marginal: return "marginal";
    case Stability::Unstable: return "unstable";
  }
  return "?";
}

const SystemParams& validate(const SystemParams& p) {
  std::vector<std::string> errs;
  auto finite = [&](double v, const char* name) {
    if (!std::isfinite(v)) errs.push_back(std::string(name) + " must be finite");
    return std::isfinite(v);
  };
  if (finite(p.omega_m, "omega_m") && p.omega_m != 1.0) errs.emplace_back("omega_m must be exactly 1");
  if (finite(p.kappa, "kappa") && !(p.kappa > 0.0)) errs.emplace_back("kappa must be positive");
  if (finite(p.gamma_m, "gamma_m") && !(p.gamma_m > 0.0)) errs.emplace_back("gamma_m must be positive");
  if (finite(p.g0, "g0") && p.g0 < 0.0) errs.emplace_back("g0 must be non-negative");
  if (finite(p.n_a, "n_a") && p.n_a < 0.0) errs.emplace_back("n_a must be non-negative");
  if (finite(p.n_m, "n_m") && p.n_m < 0.0) errs.emplace_back("n_m must be non-negative");
  finite(p.delta_a, "delta_a");
  finite(p.delta_eff, "delta_eff");
  finite(p.phi, "phi");
  if (!errs.empty()) throw ValidationError(std::move(errs));
  return p;
}

void validate(const DriveSidebands& drive) {
  if (!(drive.Omega > 0.0) || !std::isfinite(drive.Omega))
    throw ValidationError({"Omega must be positive"});
}

double cooperativity(const SystemParams& params, double g0c) {
  if (!(params.kappa > 0.0) || !(params.gamma_m > 0.0))
    throw ValidationError({"cooperativity needs positive kappa and gamma_m"});
  return 4.0 * g0c * g0c / (params.kappa * params.gamma_m);
}

double spectral_abscissa(const Mat4& m) {
  Eigen::EigenSolver<Mat4> es(m, false);
  return es.eigenvalues().real().maxCoeff();
}

Stability stability(const CouplingSidebands& couplings, const SystemParams& params) {
  if (!couplings.is_real())
    throw ValidationError({"stability classification needs real coupling tones"});
  const bool reduced_stable = std::abs(couplings.g_plus1) < std::abs(couplings.g_0);
  const double abscissa = spectral_abscissa(drift_rwa(couplings, params).m);
  const bool eig_stable = abscissa < 0.0;

  if (reduced_stable && !eig_stable)
    throw NumericError("stability: |G1| < |G0| but rotating-frame drift has eigenvalue with Re = " +
                       std::to_string(abscissa));
  if (reduced_stable) return Stability::Stable;
  return eig_stable ? Stability::Marginal : Stability::Unstable;
}

}  // namespace squeezesim
