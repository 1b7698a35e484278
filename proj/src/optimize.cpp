#include "squeezesim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>

#include "squeezesim/adiabatic.hpp"
#include "squeezesim/analysis.hpp"
#include "squeezesim/covariance.hpp"
#include "squeezesim/spectral.hpp"

namespace squeezesim {

namespace {

constexpr double kRatioCap = 1.0 - 1e-9;
constexpr int kScanPoints = 64;
constexpr double kRatioTol = 1e-6;

double variance_at(const SystemParams& p, double g0c, double ratio) {
  return steady_variance_residues(CouplingSidebands::from_ratio(g0c, ratio), p);
}

double golden_section(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double occupancy_at(const SystemParams& p, double g0c, double ratio) {
  const auto c = CouplingSidebands::from_ratio(g0c, ratio);
  const auto cm = steady_cm(drift_rwa(c, p), diffusion(p));
  return bogoliubov_occupancy(cm.mechanical_block(), std::atanh(ratio));
}

// Exceptions cannot cross an OpenMP region; the lowest-index failure is rethrown.
template <class Fn>
void for_each_point(std::size_t n, Execution exec, Fn&& fn) {
  const auto count = static_cast<long>(n);
  if (exec == Execution::Serial) {
    for (long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

SweepResult make_result(const char* variable, const std::vector<double>& grid) {
  SweepResult r;
  r.variable = variable;
  r.points = grid;
  r.variance.assign(grid.size(), 0.0);
  r.occupancy.assign(grid.size(), 0.0);
  r.ratio.assign(grid.size(), 0.0);
  return r;
}

}  // namespace

RatioOptimum optimize_ratio_numeric(const SystemParams& params, double g0c, double n_m) {
  SystemParams p = params;
  p.n_m = n_m;
  validate(p);
  auto f = [&](double x) { return variance_at(p, g0c, x); };

  std::vector<double> xs(kScanPoints), fs(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    xs[i] = kRatioCap * i / (kScanPoints - 1);
    fs[i] = f(xs[i]);
  }

  // Local minima of the coarse scan (endpoints included).
  std::vector<int> minima;
  for (int i = 0; i < kScanPoints; ++i) {
    const bool left_ok = i == 0 || fs[i] <= fs[i - 1];
    const bool right_ok = i == kScanPoints - 1 || fs[i] < fs[i + 1];
    if (left_ok && right_ok) minima.push_back(i);
  }
  if (minima.empty()) minima.push_back(static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin()));

  RatioOptimum best;
  best.unimodal = minima.size() == 1;
  best.variance = std::numeric_limits<double>::infinity();
  for (int i : minima) {
    const double a = xs[std::max(i - 1, 0)];
    const double b = xs[std::min(i + 1, kScanPoints - 1)];
    const double x = golden_section(f, a, b, kRatioTol);
    double fx = f(x);
    double xb = x;
    if (fs[i] < fx) {
      xb = xs[i];
      fx = fs[i];
    }
    if (fx < best.variance) {
      best.variance = fx;
      best.ratio = xb;
    }
  }
  return best;
}

std::vector<double> SweepResult::db() const {
  std::vector<double> out(variance.size());
  std::transform(variance.begin(), variance.end(), out.begin(), squeezing_db);
  return out;
}

void require_increasing(const std::vector<double>& points, const char* what) {
  if (points.empty()) throw ValidationError({std::string(what) + ": grid is empty"});
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i] > points[i - 1]))
      throw ValidationError({std::string(what) + ": grid must be strictly increasing"});
}

SweepResult sweep_ratio(const SystemParams& params, double g0c, double n_m,
                        const std::vector<double>& grid, Execution exec) {
  require_increasing(grid, "sweep_ratio");
  if (grid.front() < 0.0 || grid.back() >= 1.0)
    throw ValidationError({"sweep_ratio: ratios must lie in [0, 1)"});
  SystemParams p = params;
  p.n_m = n_m;
  validate(p);
  auto r = make_result("ratio", grid);
  r.adiabatic.emplace(grid.size(), 0.0);
  for_each_point(grid.size(), exec, [&](std::size_t i) {
    const double x = grid[i];
    r.ratio[i] = x;
    r.variance[i] = variance_at(p, g0c, x);
    r.occupancy[i] = occupancy_at(p, g0c, x);
    (*r.adiabatic)[i] = adiabatic_variance(CouplingSidebands::from_ratio(g0c, x), p).variance;
  });
  return r;
}

SweepResult sweep_g0(const SystemParams& params, double n_m, const std::vector<double>& grid,
                     Execution exec) {
  require_increasing(grid, "sweep_g0");
  SystemParams p = params;
  p.n_m = n_m;
  validate(p);
  auto r = make_result("g0c", grid);
  for_each_point(grid.size(), exec, [&](std::size_t i) {
    const auto opt = optimize_ratio_numeric(p, grid[i], n_m);
    r.ratio[i] = opt.ratio;
    r.variance[i] = opt.variance;
    r.occupancy[i] = occupancy_at(p, grid[i], opt.ratio);
  });
  return r;
}

SweepResult sweep_cooperativity(const SystemParams& params, double n_m,
                                const std::vector<double>& grid, Execution exec) {
  require_increasing(grid, "sweep_cooperativity");
  SystemParams p = params;
  p.n_m = n_m;
  validate(p);
  auto r = make_result("cooperativity", grid);
  for_each_point(grid.size(), exec, [&](std::size_t i) {
    const double g0c = std::sqrt(grid[i] * p.kappa * p.gamma_m / 4.0);
    const auto opt = optimize_ratio_numeric(p, g0c, n_m);
    r.ratio[i] = opt.ratio;
    r.variance[i] = opt.variance;
    r.occupancy[i] = occupancy_at(p, g0c, opt.ratio);
  });
  return r;
}

SweepResult sweep_nm(const SystemParams& params, double g0c, double ratio,
                     const std::vector<double>& grid, Execution exec) {
  require_increasing(grid, "sweep_nm");
  validate(params);
  auto r = make_result("n_m", grid);
  r.adiabatic.emplace(grid.size(), 0.0);
  for_each_point(grid.size(), exec, [&](std::size_t i) {
    SystemParams p = params;
    p.n_m = grid[i];
    validate(p);
    r.ratio[i] = ratio;
    r.variance[i] = variance_at(p, g0c, ratio);
    r.occupancy[i] = occupancy_at(p, g0c, ratio);
    (*r.adiabatic)[i] = adiabatic_variance(CouplingSidebands::from_ratio(g0c, ratio), p).variance;
  });
  return r;
}

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw ValidationError({"grid count must be >= 1"});
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
  return v;
}

std::vector<double> logspace(double start, double stop, int count) {
  if (!(start > 0.0) || !(stop > 0.0)) throw ValidationError({"log grid needs positive endpoints"});
  auto v = linspace(std::log10(start), std::log10(stop), count);
  for (auto& x : v) x = std::pow(10.0, x);
  return v;
}

}  // namespace squeezesim
