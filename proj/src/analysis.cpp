#include "squeezesim/analysis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/LU>
#include <omp.h>

namespace squeezesim {

void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

double squeezing_db(double variance) {
  if (!(variance > 0.0)) throw NumericError("squeezing_db: variance must be positive");
  return -10.0 * std::log10(variance / 0.5);
}

double bogoliubov_occupancy(const Mat2& vb, double r) {
  const double occ = 0.5 * (std::exp(2.0 * r) * vb(0, 0) + std::exp(-2.0 * r) * vb(1, 1) - 1.0);
  if (occ < -1e-9)
    throw NumericError("bogoliubov_occupancy: negative occupancy " + std::to_string(occ) +
                       " (invalid covariance block)");
  return occ;
}

double wigner_density(const Mat2& vb, double x, double y) {
  const double det = vb.determinant();
  const Mat2 inv = vb.inverse();
  const double q = inv(0, 0) * x * x + (inv(0, 1) + inv(1, 0)) * x * y + inv(1, 1) * y * y;
  return std::exp(-0.5 * q) / (2.0 * std::numbers::pi * std::sqrt(det));
}

double WignerGrid::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * dx * dy;
}

AxisRange sigma_window(double variance, double n_sigma) {
  const double half = n_sigma * std::sqrt(variance);
  return {-half, half};
}

WignerGrid wigner_grid(const Mat2& vb, AxisRange x, AxisRange y, int n_points, Execution exec) {
  if (n_points < 2) throw ValidationError({"wigner grid needs at least 2 points per axis"});
  if (!(x.max > x.min) || !(y.max > y.min)) throw ValidationError({"wigner grid ranges are empty"});
  const double det = vb.determinant();
  if (!(det > 0.0)) throw NumericError("wigner_grid: singular mechanical covariance block");

  WignerGrid g;
  g.x = x;
  g.y = y;
  g.nx = g.ny = n_points;
  g.dx = (x.max - x.min) / (n_points - 1);
  g.dy = (y.max - y.min) / (n_points - 1);
  g.vb = vb;
  g.values.resize(static_cast<std::size_t>(n_points) * n_points);

  const Mat2 inv = vb.inverse();
  const double a = inv(0, 0), b = inv(0, 1) + inv(1, 0), c = inv(1, 1);
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
  const int n = n_points;
  double* out = g.values.data();
  auto row = [&](int iy) {
    const double yv = y.min + iy * g.dy;
    for (int ix = 0; ix < n; ++ix) {
      const double xv = x.min + ix * g.dx;
      out[static_cast<std::size_t>(iy) * n + ix] =
          norm * std::exp(-0.5 * (a * xv * xv + b * xv * yv + c * yv * yv));
    }
  };

  if (exec == Execution::OpenMP) {
#pragma omp parallel for schedule(static)
    for (int iy = 0; iy < n; ++iy) row(iy);
  } else {
    for (int iy = 0; iy < n; ++iy) row(iy);
  }
  return g;
}

}  // namespace squeezesim
