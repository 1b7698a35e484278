#pragma once

// Experiment orchestration: one config-driven run per kind, producing CSV
// files under an output prefix plus a one-line summary.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "squeezesim/config.hpp"
#include "squeezesim/parallel.hpp"

namespace squeezesim {

enum class ExperimentKind {
  Evolve,
  Steady,
  Spectrum,
  SweepRatio,
  SweepG0,
  SweepCooperativity,
  SweepNm,
  Optimize,
  Wigner,
  MeanField,
  Synthesize,
};

const char* to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(std::string_view name);
std::vector<std::string> kind_names();

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Steady;
  Config config;
  std::filesystem::path out_prefix = "squeezesim";
  Execution exec = Execution::OpenMP;
};

struct RunResult {
  std::vector<std::filesystem::path> files;
  std::string summary;
};

/// Throws ConfigError for missing/unknown/malformed keys or invalid parameters,
/// NumericError (or StabilityError) tagged with the failing module otherwise.
RunResult run(ExperimentConfig& cfg);

}  // namespace squeezesim
