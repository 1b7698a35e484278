#pragma once

// CSV emission. Every file opens with '#' comment lines (provenance), then a
// column header, then rows in full-precision scientific notation.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "squeezesim/analysis.hpp"
#include "squeezesim/covariance.hpp"
#include "squeezesim/meanfield.hpp"
#include "squeezesim/optimize.hpp"

namespace squeezesim {

using Provenance = std::vector<std::pair<std::string, std::string>>;

/// "%.17e" rendering; the textual form round-trips exactly.
std::string format_number(double x);

std::string provenance_header(const Provenance& prov);

/// t (in units of tau), Re<a>, Im<a>, Re<b>, Im<b>.
std::string trajectory_csv(const MeanTrajectory& traj, const Provenance& prov);

/// t, V11..V44 upper triangle, then dB of V33 and V44.
std::string covariance_csv(const CovarianceSeries& series, const Provenance& prov);

/// omega, S(omega).
std::string spectrum_csv(const std::vector<double>& omega, const std::vector<double>& s,
                         const Provenance& prov);

/// Swept variable, variance, dB, occupancy, ratio, and adiabatic columns when present.
std::string sweep_csv(const SweepResult& sweep, const Provenance& prov);

/// Range/step header row, then ny rows of nx values (row index along Y).
std::string wigner_csv(const WignerGrid& grid, const Provenance& prov);

/// Writes text to path, creating parent directories. Throws Error on I/O failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace squeezesim
