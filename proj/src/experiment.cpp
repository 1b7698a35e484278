#include "squeezesim/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "squeezesim/adiabatic.hpp"
#include "squeezesim/analysis.hpp"
#include "squeezesim/covariance.hpp"
#include "squeezesim/csv.hpp"
#include "squeezesim/meanfield.hpp"
#include "squeezesim/optimize.hpp"
#include "squeezesim/spectral.hpp"

namespace squeezesim {

namespace {

constexpr std::array<std::pair<ExperimentKind, const char*>, 11> kKinds{{
    {ExperimentKind::Evolve, "evolve"},
    {ExperimentKind::Steady, "steady"},
    {ExperimentKind::Spectrum, "spectrum"},
    {ExperimentKind::SweepRatio, "sweep-ratio"},
    {ExperimentKind::SweepG0, "sweep-g0"},
    {ExperimentKind::SweepCooperativity, "sweep-cooperativity"},
    {ExperimentKind::SweepNm, "sweep-nm"},
    {ExperimentKind::Optimize, "optimize"},
    {ExperimentKind::Wigner, "wigner"},
    {ExperimentKind::MeanField, "meanfield"},
    {ExperimentKind::Synthesize, "synthesize"},
}};

std::string describe(const SystemParams& p) {
  return fmt::format("kappa={}, gamma_m={}, g0={}, delta_a={}, delta_eff={}, n_a={}, n_m={}, phi={}",
                     p.kappa, p.gamma_m, p.g0, p.delta_a, p.delta_eff, p.n_a, p.n_m, p.phi);
}

std::string describe(cplx z) { return fmt::format("({},{})", z.real(), z.imag()); }

std::string describe(const CouplingSidebands& c) {
  return fmt::format("G=({}, {}, {})", describe(c.g_minus1), describe(c.g_0), describe(c.g_plus1));
}

// Tags numeric failures with the module and parameter set that produced them.
template <class Fn>
auto in_module(const char* module, const std::string& context, Fn&& fn) {
  try {
    return fn();
  } catch (const StabilityError& e) {
    throw StabilityError(fmt::format("{} [{}]: {}", module, context, e.what()));
  } catch (const NumericError& e) {
    throw NumericError(fmt::format("{} [{}]: {}", module, context, e.what()));
  }
}

// Shared state of a single run: resolved config, output files, provenance.
class Session {
 public:
  explicit Session(ExperimentConfig& cfg) : cfg_(cfg) {}

  Config& config() { return cfg_.config; }
  Execution exec() const { return cfg_.exec; }

  SystemParams system() {
    const SystemParams p = read_system(config());
    try {
      validate(p);
    } catch (const ValidationError& e) {
      throw ConfigError(fmt::format("{}: [system] {}", config().origin(), join(e.violations())));
    }
    return p;
  }

  CouplingSidebands coupling() { return read_coupling(config()); }

  DriveSidebands drive() {
    const DriveSidebands d = read_drive(config());
    if (!(d.Omega > 0.0))
      throw ConfigError(fmt::format("{}: [drive] omega must be positive", config().origin()));
    return d;
  }

  std::vector<double> grid(const std::string& section, double start, double stop, int count,
                           const std::string& scale) {
    const double a = config().get_double(section, "start", start);
    const double b = config().get_double(section, "stop", stop);
    const int n = config().get_int(section, "count", count);
    const std::string s = config().get_string(section, "scale", scale);
    if (n < 1) throw ConfigError(fmt::format("{}: [{}] count must be >= 1", config().origin(), section));
    if (s == "linear") return linspace(a, b, n);
    if (s == "log") {
      if (!(a > 0.0) || !(b > 0.0))
        throw ConfigError(fmt::format("{}: [{}] log scale needs positive start/stop",
                                      config().origin(), section));
      return logspace(a, b, n);
    }
    throw ConfigError(fmt::format("{}: [{}] scale must be 'linear' or 'log', got '{}'",
                                  config().origin(), section, s));
  }

  /// Called once every key has been read; later reads would not reach the header.
  void seal() {
    config().require_all_consumed();
    prov_.clear();
    prov_.emplace_back("generator", "squeezesim");
    prov_.emplace_back("kind", to_string(cfg_.kind));
    for (const auto& kv : config().resolved()) prov_.push_back(kv);
  }

  std::filesystem::path emit(const std::string& suffix, const std::string& text) {
    std::filesystem::path path = cfg_.out_prefix;
    path += suffix;
    write_text(path, text);
    files_.push_back(path);
    return path;
  }

  const Provenance& provenance() const { return prov_; }
  RunResult finish(std::string summary) { return {std::move(files_), std::move(summary)}; }

  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
    return out;
  }

 private:
  ExperimentConfig& cfg_;
  Provenance prov_;
  std::vector<std::filesystem::path> files_;
};

std::string kv_csv(const Provenance& prov, const std::vector<std::pair<std::string, double>>& rows) {
  std::string out = provenance_header(prov);
  out += "quantity,value\n";
  for (const auto& [k, v] : rows) out += k + ',' + format_number(v) + '\n';
  return out;
}

double safe_occupancy(const CovarianceMatrix& cm, const CouplingSidebands& c) {
  const double ratio = c.g_plus1.real() / c.g_0.real();
  if (!(std::abs(ratio) < 1.0)) return std::numeric_limits<double>::quiet_NaN();
  return bogoliubov_occupancy(cm.mechanical_block(), std::atanh(ratio));
}

// ---------------------------------------------------------------- kinds

RunResult run_steady(Session& s) {
  const SystemParams p = s.system();
  const CouplingSidebands c = s.coupling();
  const double tol = s.config().get_double("steady", "cross_check_tol", 1e-8);
  s.seal();

  const std::string ctx = describe(p) + ", " + describe(c);
  const Stability st = in_module("model", ctx, [&] { return stability(c, p); });
  if (st == Stability::Unstable)
    throw StabilityError(fmt::format("model [{}]: drift has no steady state (G1 > G0)", ctx));
  const auto cm = in_module("covariance", ctx, [&] { return steady_cm(drift_rwa(c, p), diffusion(p)); });
  const auto sv = in_module("spectral", ctx, [&] { return steady_variance_spectral(c, p, tol); });

  std::vector<std::pair<std::string, double>> rows{
      {"V33_lyapunov", cm.position_variance()},
      {"V44_lyapunov", cm.momentum_variance()},
      {"V34_lyapunov", cm(2, 3)},
      {"V33_spectral", sv.value},
      {"V33_quadrature", sv.quadrature},
      {"spectral_discrepancy", sv.discrepancy},
      {"db33", squeezing_db(sv.value)},
      {"db44", squeezing_db(cm.momentum_variance())},
      {"bogoliubov_occupancy", safe_occupancy(cm, c)},
      {"mechanical_determinant", cm.mechanical_determinant()},
      {"stable", st == Stability::Stable ? 1.0 : 0.0},
  };
  const double g1 = c.g_plus1.real(), g0c = c.g_0.real();
  if (g0c > 0.0 && g1 >= 0.0 && g1 <= g0c) {
    const auto ad = adiabatic_variance(c, p);
    rows.emplace_back("V33_adiabatic", ad.variance);
    rows.emplace_back("adiabatic_valid", ad.valid ? 1.0 : 0.0);
  }
  s.emit("_steady.csv", kv_csv(s.provenance(), rows));
  return s.finish(fmt::format("V33={:.4f}, {:.2f} dB ({})", sv.value, squeezing_db(sv.value),
                              to_string(st)));
}

RunResult run_evolve(Session& s) {
  const SystemParams p = s.system();
  const CouplingSidebands c = s.coupling();
  auto& cfg = s.config();
  const std::string frame = cfg.get_string("evolve", "frame", "rwa");
  if (frame != "rwa" && frame != "full")
    throw ConfigError(fmt::format("{}: [evolve] frame must be 'rwa' or 'full', got '{}'",
                                  cfg.origin(), frame));
  const bool full = frame == "full";
  const double Omega = full ? cfg.get_double("drive", "omega", 2.0) : 2.0;
  const double tau = 2.0 * std::numbers::pi / Omega;
  const double t_end = cfg.get_double("evolve", "t_end");
  const double dt = cfg.get_double("evolve", "dt", full ? default_full_drift_step(p) : 0.01);
  EvolveOptions opts;
  opts.sample_stride = cfg.get_int("evolve", "sample_stride", 1);
  opts.record_from = cfg.get_double("evolve", "record_from", 0.0);
  if (!(t_end > 0.0) || !(dt > 0.0))
    throw ConfigError(fmt::format("{}: [evolve] t_end and dt must be positive", cfg.origin()));
  s.seal();

  const std::string ctx = describe(p) + ", " + describe(c);
  const auto series = in_module("covariance", ctx, [&] {
    const DriftSource drift = full ? full_drift_source(c, p, Omega) : constant_drift(drift_rwa(c, p));
    return evolve_cm(CovarianceMatrix::initial_state(p), drift, diffusion(p), t_end, dt, opts);
  });
  s.emit("_covariance.csv", covariance_csv(series, s.provenance()));

  double min_det = std::numeric_limits<double>::infinity();
  double min_v33 = std::numeric_limits<double>::infinity();
  const double t_last = series.t.back();
  for (std::size_t i = 0; i < series.size(); ++i) {
    min_det = std::min(min_det, series.at(i).mechanical_determinant());
    if (series.t[i] >= t_last - tau) min_v33 = std::min(min_v33, series.v[i](2, 2));
  }
  const double v33 = series.v.back()(2, 2);
  return s.finish(fmt::format(
      "{} frame: V33(t={:.6g})={:.6g} ({:.2f} dB), min V33 over last period {:.6g} ({:.2f} dB), "
      "min det Vb={:.6g}",
      frame, t_last, v33, squeezing_db(v33), min_v33, squeezing_db(min_v33), min_det));
}

RunResult run_spectrum(Session& s) {
  const SystemParams p = s.system();
  const CouplingSidebands c = s.coupling();
  const auto omega = s.grid("spectrum", -0.5, 0.5, 1001, "linear");
  s.seal();

  const std::string ctx = describe(p) + ", " + describe(c);
  std::vector<double> values(omega.size());
  in_module("spectral", ctx, [&] {
    for (std::size_t i = 0; i < omega.size(); ++i) values[i] = position_spectrum(omega[i], c, p);
    return 0;
  });
  const double var = in_module("spectral", ctx, [&] { return steady_variance_residues(c, p); });
  s.emit("_spectrum.csv", spectrum_csv(omega, values, s.provenance()));
  const auto peak = std::max_element(values.begin(), values.end()) - values.begin();
  return s.finish(fmt::format("integrated V33={:.6g} ({:.2f} dB), peak S={:.6g} at omega={:.6g}",
                              var, squeezing_db(var), values[peak], omega[peak]));
}

std::string best_point_summary(const SweepResult& r) {
  const auto i = std::min_element(r.variance.begin(), r.variance.end()) - r.variance.begin();
  return fmt::format("best {}={:.6g}: V33={:.6g} ({:.2f} dB), ratio={:.6g}", r.variable, r.points[i],
                     r.variance[i], squeezing_db(r.variance[i]), r.ratio[i]);
}

RunResult run_sweep_ratio(Session& s) {
  const SystemParams p = s.system();
  const double g0c = s.config().get_double("sweep", "g0c");
  const auto grid = s.grid("sweep", 0.0, 0.99, 100, "linear");
  s.seal();
  const auto r = in_module("optimize", describe(p), [&] {
    return sweep_ratio(p, g0c, p.n_m, grid, s.exec());
  });
  s.emit("_sweep_ratio.csv", sweep_csv(r, s.provenance()));
  return s.finish(best_point_summary(r));
}

RunResult run_sweep_g0(Session& s) {
  const SystemParams p = s.system();
  const auto grid = s.grid("sweep", 0.01, 0.3, 30, "linear");
  s.seal();
  const auto r = in_module("optimize", describe(p), [&] { return sweep_g0(p, p.n_m, grid, s.exec()); });
  s.emit("_sweep_g0.csv", sweep_csv(r, s.provenance()));
  return s.finish(best_point_summary(r));
}

RunResult run_sweep_cooperativity(Session& s) {
  const SystemParams p = s.system();
  const auto grid = s.grid("sweep", 1.0, 1e6, 31, "log");
  s.seal();
  const auto r = in_module("optimize", describe(p), [&] {
    return sweep_cooperativity(p, p.n_m, grid, s.exec());
  });
  s.emit("_sweep_cooperativity.csv", sweep_csv(r, s.provenance()));
  return s.finish(best_point_summary(r));
}

RunResult run_sweep_nm(Session& s) {
  const SystemParams p = s.system();
  const double g0c = s.config().get_double("sweep", "g0c");
  const double ratio = s.config().get_double("sweep", "ratio");
  const auto grid = s.grid("sweep", 1.0, 1e5, 41, "log");
  s.seal();
  const auto r = in_module("optimize", describe(p), [&] {
    return sweep_nm(p, g0c, ratio, grid, s.exec());
  });
  s.emit("_sweep_nm.csv", sweep_csv(r, s.provenance()));

  // 3-dB crossing, interpolated linearly in log10(n_m).
  const auto db = r.db();
  std::string crossing = "no 3 dB crossing in range";
  for (std::size_t i = 1; i < db.size(); ++i)
    if ((db[i - 1] - 3.0) * (db[i] - 3.0) <= 0.0 && db[i - 1] != db[i]) {
      const double f = (db[i - 1] - 3.0) / (db[i - 1] - db[i]);
      const double la = std::log10(r.points[i - 1]), lb = std::log10(r.points[i]);
      crossing = fmt::format("3 dB crossing at n_m={:.4g}", std::pow(10.0, la + f * (lb - la)));
      break;
    }
  return s.finish(fmt::format("n_m={:.6g}: {:.2f} dB; {}", r.points.front(), db.front(), crossing));
}

RunResult run_optimize(Session& s) {
  const SystemParams p = s.system();
  auto& cfg = s.config();
  std::vector<double> grid;
  if (cfg.has("optimize", "g0c")) grid = {cfg.get_double("optimize", "g0c")};
  else grid = s.grid("optimize", 0.05, 0.3, 26, "linear");
  s.seal();

  const std::string ctx = describe(p);
  std::vector<RatioOptimum> numeric(grid.size());
  std::vector<double> transcendental(grid.size()), closed(grid.size());
  std::vector<std::string> warnings;
  in_module("optimize", ctx, [&] {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      numeric[i] = optimize_ratio_numeric(p, grid[i], p.n_m);
      transcendental[i] = optimal_ratio_transcendental(p, grid[i], p.n_m);
      closed[i] = optimal_ratio_closed_form(p, grid[i], p.n_m, &warnings);
    }
    return 0;
  });

  std::string out = provenance_header(s.provenance());
  out += "g0c,ratio_numeric,ratio_transcendental,ratio_closed_form,variance,db,unimodal\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out += fmt::format("{},{},{},{},{},{},{}\n", format_number(grid[i]),
                       format_number(numeric[i].ratio), format_number(transcendental[i]),
                       format_number(closed[i]), format_number(numeric[i].variance),
                       format_number(squeezing_db(numeric[i].variance)), numeric[i].unimodal ? 1 : 0);
  s.emit("_optimize.csv", out);

  const std::size_t last = grid.size() - 1;
  return s.finish(fmt::format(
      "G0={:.6g}: ratio numeric={:.6f}, transcendental={:.6f}, closed form={:.6f}; {:.2f} dB{}",
      grid[last], numeric[last].ratio, transcendental[last], closed[last],
      squeezing_db(numeric[last].variance),
      warnings.empty() ? "" : fmt::format(" ({} low-cooperativity warnings)", warnings.size())));
}

RunResult run_wigner(Session& s) {
  const SystemParams p = s.system();
  auto& cfg = s.config();
  const std::string source = cfg.get_string("wigner", "source", "steady");
  const int n_points = cfg.get_int("wigner", "n_points", 201);
  const double n_sigma = cfg.get_double("wigner", "n_sigma", 6.0);
  if (source != "steady" && source != "full" && source != "vacuum")
    throw ConfigError(fmt::format("{}: [wigner] source must be steady, full or vacuum, got '{}'",
                                  cfg.origin(), source));

  CouplingSidebands c;
  double Omega = 2.0, start = 0.0, dt = 0.0;
  int frames = 1;
  if (source != "vacuum") c = s.coupling();
  if (source == "full") {
    Omega = cfg.get_double("drive", "omega", 2.0);
    start = cfg.get_double("wigner", "start_periods", 99.0);
    frames = cfg.get_int("wigner", "frames", 8);
    dt = cfg.get_double("wigner", "dt", default_full_drift_step(p));
    if (frames < 1) throw ConfigError(fmt::format("{}: [wigner] frames must be >= 1", cfg.origin()));
  }
  s.seal();

  const std::string ctx = describe(p) + ", " + describe(c);
  std::vector<std::pair<double, Mat2>> blocks;
  if (source == "vacuum") {
    blocks.emplace_back(0.0, Mat2::Identity() * 0.5);
  } else if (source == "steady") {
    const auto cm = in_module("covariance", ctx, [&] { return steady_cm(drift_rwa(c, p), diffusion(p)); });
    blocks.emplace_back(0.0, cm.mechanical_block());
  } else {
    const double tau = 2.0 * std::numbers::pi / Omega;
    const double t_end = (start + 1.0) * tau;
    const auto series = in_module("covariance", ctx, [&] {
      EvolveOptions opts;
      opts.record_from = start * tau;
      return evolve_cm(CovarianceMatrix::initial_state(p), full_drift_source(c, p, Omega),
                       diffusion(p), t_end, dt, opts);
    });
    for (int f = 0; f < frames; ++f) {
      const double t = (start + static_cast<double>(f) / frames) * tau;
      const auto it = std::lower_bound(series.t.begin(), series.t.end(), t - 1e-9 * dt);
      const auto k = static_cast<std::size_t>(it - series.t.begin());
      blocks.emplace_back(series.t[std::min(k, series.size() - 1)],
                          series.v[std::min(k, series.size() - 1)].block<2, 2>(2, 2));
    }
  }

  // One window for all frames so the grids share axes.
  double vmax = 0.0;
  for (const auto& [t, vb] : blocks) vmax = std::max({vmax, vb(0, 0), vb(1, 1)});
  const AxisRange window = sigma_window(vmax, n_sigma);

  std::string summary;
  for (std::size_t f = 0; f < blocks.size(); ++f) {
    const auto& [t, vb] = blocks[f];
    const auto grid = in_module("analysis", ctx, [&] {
      return wigner_grid(vb, window, window, n_points, s.exec());
    });
    Provenance prov = s.provenance();
    prov.emplace_back("frame_time", format_number(t));
    const std::string suffix =
        blocks.size() == 1 ? std::string("_wigner.csv") : fmt::format("_wigner_{:03d}.csv", f);
    s.emit(suffix, wigner_csv(grid, prov));
    if (f == 0)
      summary = fmt::format("peak={:.10g}, mass={:.6f}, Vb=[[{:.6g}, {:.6g}], [{:.6g}, {:.6g}]]",
                            wigner_density(vb, 0.0, 0.0), grid.mass(), vb(0, 0), vb(0, 1),
                            vb(1, 0), vb(1, 1));
  }
  if (blocks.size() > 1) summary = fmt::format("{} frames; first: {}", blocks.size(), summary);
  return s.finish(summary);
}

RunResult run_meanfield(Session& s) {
  const SystemParams p = s.system();
  const DriveSidebands d = s.drive();
  auto& cfg = s.config();
  const double periods = cfg.get_double("meanfield", "t_end_periods", 200.0);
  const int steps = cfg.get_int("meanfield", "steps_per_period", 2000);
  MeanFieldOptions opts;
  opts.sample_stride = cfg.get_int("meanfield", "sample_stride", 20);
  opts.record_from = cfg.get_double("meanfield", "record_from_periods", 0.0) * d.period();
  const int j_max = cfg.get_int("meanfield", "j_max", 10);
  const int n_max = cfg.get_int("meanfield", "n_max", 5);
  const double compare_from = cfg.get_double("meanfield", "compare_from_periods", periods - 10.0);
  if (steps < 1000)
    throw ConfigError(fmt::format("{}: [meanfield] steps_per_period must be >= 1000", cfg.origin()));
  s.seal();

  const std::string ctx = describe(p) + fmt::format(", eps=({}, {}, {}), Omega={}",
                                                    describe(d.eps_minus1), describe(d.eps_0),
                                                    describe(d.eps_plus1), d.Omega);
  const auto traj = in_module("meanfield", ctx, [&] {
    return integrate_meanfield(p, d, periods * d.period(), d.period() / steps, opts);
  });
  s.emit("_meanfield.csv", trajectory_csv(traj, s.provenance()));

  std::string summary = fmt::format("<a>(end)={}, <b>(end)={}", describe(traj.a.back()),
                                    describe(traj.b.back()));
  if (p.g0 > 0.0) {
    const auto est = in_module("meanfield", ctx, [&] { return effective_coupling(p, traj); });
    summary += fmt::format("; G tones {}{}", describe(est.tones), est.settled ? "" : " (not settled)");
  }
  if (j_max > 0) {
    const auto amps = in_module("meanfield", ctx, [&] { return floquet_amplitudes(p, d, j_max, n_max); });
    MeanTrajectory rec = traj;
    double err_a = 0.0, err_b = 0.0, ref_a = 0.0, ref_b = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      rec.a[i] = amps.a_at(rec.t[i]);
      rec.b[i] = amps.b_at(rec.t[i]);
      if (rec.t[i] >= compare_from * d.period() - 1e-9 * traj.dt) {
        err_a = std::max(err_a, std::abs(rec.a[i] - traj.a[i]));
        err_b = std::max(err_b, std::abs(rec.b[i] - traj.b[i]));
        ref_a = std::max(ref_a, std::abs(traj.a[i]));
        ref_b = std::max(ref_b, std::abs(traj.b[i]));
      }
    }
    s.emit("_floquet.csv", trajectory_csv(rec, s.provenance()));
    summary += fmt::format("; expansion vs ODE from {} periods: rel err a={:.3g}, b={:.3g}{}",
                           compare_from, ref_a > 0 ? err_a / ref_a : err_a,
                           ref_b > 0 ? err_b / ref_b : err_b,
                           amps.converged ? "" : " (expansion not converged)");
  }
  return s.finish(summary);
}

RunResult run_synthesize(Session& s) {
  const SystemParams p = s.system();
  const CouplingSidebands target = s.coupling();
  auto& cfg = s.config();
  const double Omega = cfg.get_double("drive", "omega", 2.0);
  const std::string rule_name = cfg.get_string("synthesize", "rule", "harmonic_balance");
  SynthesisRule rule;
  if (rule_name == "harmonic_balance") rule = SynthesisRule::HarmonicBalance;
  else if (rule_name == "closed_form") rule = SynthesisRule::ClosedForm;
  else
    throw ConfigError(fmt::format(
        "{}: [synthesize] rule must be harmonic_balance or closed_form, got '{}'", cfg.origin(),
        rule_name));
  const bool verify = cfg.get_bool("synthesize", "verify", true);
  double periods = 0.0, window = 0.0;
  int steps = 0, stride = 1;
  if (verify) {
    periods = cfg.get_double("synthesize", "t_end_periods", 100.0);
    window = cfg.get_double("synthesize", "window_from_periods", 95.0);
    steps = cfg.get_int("synthesize", "steps_per_period", 2000);
    stride = cfg.get_int("synthesize", "sample_stride", 10);
    if (steps < 1000)
      throw ConfigError(fmt::format("{}: [synthesize] steps_per_period must be >= 1000", cfg.origin()));
  }
  s.seal();

  const std::string ctx = describe(p) + ", target " + describe(target);
  DriveSidebands d;
  try {
    d = in_module("meanfield", ctx, [&] { return synthesize_drive(p, target, Omega, rule); });
  } catch (const ValidationError& e) {
    throw ConfigError(fmt::format("{}: {}", cfg.origin(), Session::join(e.violations())));
  }

  std::string out = provenance_header(s.provenance());
  out += "sideband,re_eps,im_eps\n";
  const std::array<std::pair<int, cplx>, 3> tones{{{-1, d.eps_minus1}, {0, d.eps_0}, {1, d.eps_plus1}}};
  for (const auto& [n, e] : tones)
    out += fmt::format("{},{},{}\n", n, format_number(e.real()), format_number(e.imag()));
  s.emit("_drive.csv", out);

  std::string summary = fmt::format("eps_-1={}, eps_0={}, eps_1={}", describe(d.eps_minus1),
                                    describe(d.eps_0), describe(d.eps_plus1));
  if (verify) {
    MeanFieldOptions opts;
    opts.sample_stride = stride;
    const auto traj = in_module("meanfield", ctx, [&] {
      return integrate_meanfield(p, d, periods * d.period(), d.period() / steps, opts);
    });
    const double res = coupling_residual(p, traj, target, Omega, window * d.period());
    s.emit("_roundtrip.csv", trajectory_csv(traj, s.provenance()));
    summary += fmt::format("; round-trip residual {:.4g} ({:.3f}% of G0)", res,
                           100.0 * res / std::abs(target.g_0));
  }
  return s.finish(summary);
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKinds)
    if (k == kind) return name;
  return "unknown";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKinds)
    if (name == n) return k;
  return std::nullopt;
}

std::vector<std::string> kind_names() {
  std::vector<std::string> out;
  for (const auto& [k, n] : kKinds) out.emplace_back(n);
  return out;
}

RunResult run(ExperimentConfig& cfg) {
  if (cfg.config.empty()) throw ConfigError(fmt::format("{}: config is empty", cfg.config.origin()));
  Session s(cfg);
  switch (cfg.kind) {
    case ExperimentKind::Evolve: return run_evolve(s);
    case ExperimentKind::Steady: return run_steady(s);
    case ExperimentKind::Spectrum: return run_spectrum(s);
    case ExperimentKind::SweepRatio: return run_sweep_ratio(s);
    case ExperimentKind::SweepG0: return run_sweep_g0(s);
    case ExperimentKind::SweepCooperativity: return run_sweep_cooperativity(s);
    case ExperimentKind::SweepNm: return run_sweep_nm(s);
    case ExperimentKind::Optimize: return run_optimize(s);
    case ExperimentKind::Wigner: return run_wigner(s);
    case ExperimentKind::MeanField: return run_meanfield(s);
    case ExperimentKind::Synthesize: return run_synthesize(s);
  }
  throw ConfigError("unknown experiment kind");
}

}  // namespace squeezesim
