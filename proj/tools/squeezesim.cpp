// squeezesim <kind> --config <path> [--out <prefix>] [--threads N]
//
// Exit codes: 0 success, 2 usage/config error, 3 numeric or stability error.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "squeezesim/errors.hpp"
#include "squeezesim/experiment.hpp"
#include "squeezesim/parallel.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::string kinds_list() {
  std::string out;
  for (const auto& k : squeezesim::kind_names()) out += (out.empty() ? "" : " | ") + k;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mechanical squeezing under a periodically modulated optomechanical drive"};
  app.usage("squeezesim <kind> --config <path> [--out <prefix>] [--threads N]\n  kind: " +
            kinds_list());

  std::string kind_name, config_path, out_prefix = "squeezesim";
  int threads = 0;
  bool serial = false;
  app.add_option("kind", kind_name, "Experiment kind")->required();
  app.add_option("-c,--config", config_path, "Config file (key = value with [section] headers)")
      ->required();
  app.add_option("-o,--out", out_prefix, "Output path prefix for CSV files");
  app.add_option("-t,--threads", threads, "Worker threads for sweeps and grids (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--serial", serial, "Use the serial reference kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  using namespace squeezesim;
  try {
    const auto kind = parse_kind(kind_name);
    if (!kind) throw ConfigError(fmt::format("unknown kind '{}'; expected one of: {}", kind_name, kinds_list()));
    set_thread_count(threads);

    ExperimentConfig cfg;
    cfg.kind = *kind;
    cfg.config = Config::from_file(config_path);
    cfg.out_prefix = out_prefix;
    cfg.exec = serial ? Execution::Serial : Execution::OpenMP;

    const RunResult result = run(cfg);
    for (const auto& f : result.files) fmt::print("wrote {}\n", f.string());
    fmt::print("{}\n", result.summary);
    return 0;
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n{}\n", e.what(), app.get_usage());
    return kExitConfig;
  } catch (const ValidationError& e) {
    fmt::print(stderr, "invalid parameters: {}\n", e.what());
    for (const auto& v : e.violations()) fmt::print(stderr, "  - {}\n", v);
    return kExitConfig;
  } catch (const StabilityError& e) {
    fmt::print(stderr, "stability error: {}\n", e.what());
    return kExitNumeric;
  } catch (const NumericError& e) {
    fmt::print(stderr, "numeric error: {}\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
