#include "squeezesim/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace squeezesim {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (c_.size() > 1 && c_.back() == cplx{}) c_.pop_back();
}

cplx Polynomial::operator()(cplx x) const {
  cplx acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({cplx{}});
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(out));
}

std::vector<cplx> Polynomial::roots() const {
  const int n = degree();
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const cplx lead = c_.back();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c_[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);

  const Polynomial dp = derivative();
  std::vector<cplx> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    cplx z = es.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const cplx d = dp(z);
      if (d == cplx{}) break;
      const cplx step = (*this)(z) / d;
      z -= step;
      if (std::abs(step) <= 1e-17 * std::abs(z)) break;
    }
    out.push_back(z);
  }
  return out;
}

std::optional<ResidueIntegral> integrate_rational(const Polynomial& num, const Polynomial& den,
                                                  double repeated_root_tol) {
  if (den.degree() < num.degree() + 2)
    throw NumericError("integrate_rational: integrand does not decay fast enough");

  const auto roots = den.roots();
  double scale = 0.0;
  for (const auto& z : roots) scale = std::max(scale, std::abs(z));

  double min_sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      min_sep = std::min(min_sep, std::abs(roots[i] - roots[j]) / scale);

  for (const auto& z : roots)
    if (std::abs(z.imag()) <= 1e-14 * scale)
      throw NumericError("integrate_rational: pole on the real axis at " + std::to_string(z.real()));

  if (roots.size() > 1 && min_sep < repeated_root_tol) return std::nullopt;

  const Polynomial dden = den.derivative();
  cplx sum{};
  for (const auto& z : roots)
    if (z.imag() > 0.0) sum += num(z) / dden(z);

  const cplx total = cplx(0.0, 2.0 * std::numbers::pi) * sum;
  return ResidueIntegral{total.real(), roots.size() > 1 ? min_sep : 1.0};
}

}  // namespace squeezesim
