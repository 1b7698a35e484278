#pragma once

// Complex-coefficient polynomials and exact real-line integrals of rational
// functions by residues.

#include <optional>
#include <vector>

#include "squeezesim/model.hpp"

namespace squeezesim {

/// Coefficients in ascending order: c[0] + c[1] x + c[2] x^2 + ...
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }

  cplx operator()(cplx x) const;
  Polynomial derivative() const;
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  /// Roots via companion-matrix eigenvalues, each polished by Newton steps.
  std::vector<cplx> roots() const;

 private:
  void trim();
  std::vector<cplx> c_;
};

struct ResidueIntegral {
  double value = 0.0;
  double min_root_separation = 0.0;  // relative to the largest root modulus
};

/// Integral over the real line of num(x)/den(x) from the residues in the
/// upper half plane. Needs deg den >= deg num + 2. Returns nullopt when the
/// denominator has (numerically) repeated roots, which simple-pole residues
/// cannot handle. Throws NumericError for a root on the real axis.
std::optional<ResidueIntegral> integrate_rational(const Polynomial& num, const Polynomial& den,
                                                  double repeated_root_tol = 1e-4);

}  // namespace squeezesim
