#pragma once

// Shared fixtures, seeded generators and independent oracles for the tests.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "squeezesim/model.hpp"

namespace test {

using squeezesim::CouplingSidebands;
using squeezesim::Mat2;
using squeezesim::Mat4;
using squeezesim::SystemParams;

inline SystemParams fig2_params() {
  SystemParams p;
  p.kappa = 0.1;
  p.gamma_m = 1e-6;
  p.delta_a = 1.0;
  p.n_a = 0.0;
  p.n_m = 10.0;
  return p;
}

inline CouplingSidebands fig2_tones() { return {0.01, 0.1, 0.05}; }

/// V33 of the Fig.-2 set; frozen from a brute-force quadrature of the spectrum
/// and a 16x16 Kronecker Lyapunov solve, which agree to 1e-15.
constexpr double kFig2V33 = 0.16680444295186717;

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

 private:
  std::mt19937_64 gen_;
};

struct Draw {
  SystemParams p;
  CouplingSidebands c;
};

/// Random strictly stable draw over the ranges used by the oracle checks.
inline Draw random_stable_draw(Rng& rng) {
  Draw d;
  d.p.kappa = rng.uniform(0.05, 0.5);
  d.p.gamma_m = 1e-6;
  d.p.n_a = rng.uniform(0.0, 1.0);
  d.p.n_m = rng.uniform(0.0, 100.0);
  const double g0 = rng.uniform(0.01, 0.3);
  d.c = CouplingSidebands::from_ratio(g0, rng.uniform(0.0, 0.99));
  return d;
}

/// Independent Lyapunov oracle: (I (x) M + M (x) I) vec V = -vec D over all 16 entries.
inline Mat4 lyapunov_kronecker(const Mat4& m, const Mat4& d) {
  Eigen::Matrix<double, 16, 16> k = Eigen::Matrix<double, 16, 16>::Zero();
  const Mat4 id = Mat4::Identity();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      k.block<4, 4>(4 * i, 4 * j) += id(i, j) * m;
      k.block<4, 4>(4 * i, 4 * j) += m(i, j) * id;
    }
  // Column-major vec: vec(M V) = (I (x) M) vec V and vec(V M^T) = (M (x) I) vec V.
  Eigen::Matrix<double, 16, 1> rhs;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) rhs(4 * c + r) = -d(r, c);
  const Eigen::Matrix<double, 16, 1> x = k.fullPivLu().solve(rhs);
  Mat4 v;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) v(r, c) = x(4 * c + r);
  return v;
}

/// <beta^dag beta> by direct expansion of beta = cosh r b + sinh r b^dag in
/// terms of <b^dag b> and <b b>, with the block in the (X, Y) = (b + b^dag, i(b^dag - b))/sqrt2 convention.
inline double bogoliubov_occupancy_oracle(const Mat2& vb, double r) {
  const double n = 0.5 * (vb(0, 0) + vb(1, 1) - 1.0);
  const std::complex<double> bb(0.5 * (vb(0, 0) - vb(1, 1)), vb(0, 1));
  const double ch = std::cosh(r), sh = std::sinh(r);
  return ch * ch * n + sh * sh * (n + 1.0) + 2.0 * ch * sh * bb.real();
}

}  // namespace test
