#pragma once

// Flat "key = value" configuration with [section] headers. Every value read
// is recorded (including defaults) so outputs can embed the resolved config.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "squeezesim/model.hpp"

namespace squeezesim {

class Config {
 public:
  static Config from_file(const std::filesystem::path& path);
  static Config from_string(const std::string& text, const std::string& origin = "<string>");

  bool empty() const { return tree_.empty(); }
  bool has(const std::string& section, const std::string& key) const;

  double get_double(const std::string& section, const std::string& key);
  double get_double(const std::string& section, const std::string& key, double fallback);
  int get_int(const std::string& section, const std::string& key, int fallback);
  cplx get_complex(const std::string& section, const std::string& key);
  cplx get_complex(const std::string& section, const std::string& key, cplx fallback);
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback);
  bool get_bool(const std::string& section, const std::string& key, bool fallback);

  /// Resolved (section, key, value) triples in first-read order.
  const std::vector<std::pair<std::string, std::string>>& resolved() const { return resolved_; }
  /// Throws ConfigError naming the first key present in the file but never read.
  void require_all_consumed() const;
  const std::string& origin() const { return origin_; }

 private:
  std::optional<std::string> raw(const std::string& section, const std::string& key) const;
  void record(const std::string& section, const std::string& key, const std::string& value);
  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& what) const;

  boost::property_tree::ptree tree_;
  std::string origin_;
  std::vector<std::pair<std::string, std::string>> resolved_;
  std::vector<std::string> consumed_;
  std::map<std::string, int> lines_;  // section.key -> line
};

/// [system] section with defaults for every optional field.
SystemParams read_system(Config& cfg);
CouplingSidebands read_coupling(Config& cfg);
DriveSidebands read_drive(Config& cfg);

}  // namespace squeezesim
