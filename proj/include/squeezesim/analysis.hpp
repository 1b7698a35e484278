#pragma once

#include <vector>

#include "squeezesim/model.hpp"
#include "squeezesim/parallel.hpp"

namespace squeezesim {

/// -10 log10(variance / 0.5); positive means squeezed below vacuum.
double squeezing_db(double variance);

/// <beta^dag beta> for beta = cosh r b + sinh r b^dag, from the mechanical
/// 2x2 block: (e^{2r} V33 + e^{-2r} V44 - 1)/2. Throws NumericError when the
/// result is below -1e-9.
double bogoliubov_occupancy(const Mat2& vb, double r);

struct AxisRange {
  double min = -1.0;
  double max = 1.0;
};

/// Gaussian Wigner density on a regular grid. values is row-major with rows
/// along Y: values[iy * nx + ix] at (x_min + ix dx, y_min + iy dy).
struct WignerGrid {
  AxisRange x, y;
  int nx = 0, ny = 0;
  double dx = 0.0, dy = 0.0;
  Mat2 vb = Mat2::Identity();
  std::vector<double> values;

  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  /// Riemann-sum mass over the grid cells.
  double mass() const;
};

double wigner_density(const Mat2& vb, double x, double y);

/// n_points per axis (>= 2). Throws NumericError for det vb <= 0.
WignerGrid wigner_grid(const Mat2& vb, AxisRange x, AxisRange y, int n_points,
                       Execution exec = Execution::OpenMP);

/// Symmetric window of +-n_sigma standard deviations along each axis.
AxisRange sigma_window(double variance, double n_sigma);

}  // namespace squeezesim
