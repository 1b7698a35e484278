#include "squeezesim/csv.hpp"

#include <fstream>

#include <fmt/format.h>

namespace squeezesim {

namespace {

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string format_number(double x) { return fmt::format("{:.17e}", x); }

std::string provenance_header(const Provenance& prov) {
  std::string out;
  for (const auto& [key, value] : prov) out += fmt::format("# {} = {}\n", key, value);
  return out;
}

std::string trajectory_csv(const MeanTrajectory& traj, const Provenance& prov) {
  std::string out = provenance_header(prov);
  out += "t_over_tau,re_a,im_a,re_b,im_b\n";
  for (std::size_t i = 0; i < traj.size(); ++i)
    append_row(out, {traj.t_in_periods(i), traj.a[i].real(), traj.a[i].imag(), traj.b[i].real(),
                     traj.b[i].imag()});
  return out;
}

std::string covariance_csv(const CovarianceSeries& series, const Provenance& prov) {
  std::string out = provenance_header(prov);
  out += "t";
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) out += fmt::format(",V{}{}", i + 1, j + 1);
  out += ",db33,db44\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Mat4& v = series.v[k];
    out += format_number(series.t[k]);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) out += ',' + format_number(v(i, j));
    out += ',' + format_number(squeezing_db(v(2, 2)));
    out += ',' + format_number(squeezing_db(v(3, 3)));
    out += '\n';
  }
  return out;
}

std::string spectrum_csv(const std::vector<double>& omega, const std::vector<double>& s,
                         const Provenance& prov) {
  std::string out = provenance_header(prov);
  out += "omega,S\n";
  for (std::size_t i = 0; i < omega.size(); ++i) append_row(out, {omega[i], s[i]});
  return out;
}

std::string sweep_csv(const SweepResult& sweep, const Provenance& prov) {
  std::string out = provenance_header(prov);
  out += sweep.variable + ",variance,db,occupancy,ratio";
  if (sweep.adiabatic) out += ",adiabatic_variance,adiabatic_db";
  out += '\n';
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    out += format_number(sweep.points[i]);
    out += ',' + format_number(sweep.variance[i]);
    out += ',' + format_number(squeezing_db(sweep.variance[i]));
    out += ',' + format_number(sweep.occupancy[i]);
    out += ',' + format_number(sweep.ratio[i]);
    if (sweep.adiabatic) {
      out += ',' + format_number((*sweep.adiabatic)[i]);
      out += ',' + format_number(squeezing_db((*sweep.adiabatic)[i]));
    }
    out += '\n';
  }
  return out;
}

std::string wigner_csv(const WignerGrid& grid, const Provenance& prov) {
  std::string out = provenance_header(prov);
  out += "x_min,x_max,dx,nx,y_min,y_max,dy,ny\n";
  append_row(out, {grid.x.min, grid.x.max, grid.dx, static_cast<double>(grid.nx), grid.y.min,
                   grid.y.max, grid.dy, static_cast<double>(grid.ny)});
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      if (ix) out += ',';
      out += format_number(grid.at(ix, iy));
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot open {} for writing", path.string()));
  out << text;
  if (!out) throw Error(fmt::format("write to {} failed", path.string()));
}

}  // namespace squeezesim
