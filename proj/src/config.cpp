#include "squeezesim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <fmt/format.h>

#include "squeezesim/errors.hpp"

namespace squeezesim {

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// Strips '#' and ';' comments (full-line or trailing) while keeping line numbers.
std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const auto cut = line.find_first_of("#;");
    if (cut != std::string::npos) line.erase(cut);
    out << line << '\n';
  }
  return out.str();
}

// section.key -> 1-based line number, for error context.
std::map<std::string, int> key_lines(const std::string& text) {
  std::map<std::string, int> lines;
  std::istringstream in(text);
  std::string line, section;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq != std::string::npos) lines.emplace(section + "." + trim(line.substr(0, eq)), n);
  }
  return lines;
}

std::optional<double> parse_double(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
  return v;
}

// Accepts "x" or "(re, im)".
std::optional<cplx> parse_complex(const std::string& s) {
  const std::string t = trim(s);
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') {
    const std::string body = t.substr(1, t.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string::npos) return std::nullopt;
    const auto re = parse_double(body.substr(0, comma));
    const auto im = parse_double(body.substr(comma + 1));
    if (!re || !im) return std::nullopt;
    return cplx{*re, *im};
  }
  if (const auto re = parse_double(t)) return cplx{*re, 0.0};
  return std::nullopt;
}

std::string format_complex(cplx z) { return fmt::format("({:.17e},{:.17e})", z.real(), z.imag()); }

}  // namespace

Config Config::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("{}: cannot open config file", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str(), path.string());
}

Config Config::from_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(strip_comments(text));
  try {
    boost::property_tree::ini_parser::read_ini(in, cfg.tree_);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}:{}: {}", origin, e.line(), e.message()));
  }
  for (const auto& [name, node] : cfg.tree_)
    if (node.empty() && !node.data().empty())
      throw ConfigError(fmt::format("{}:{}: key '{}' must appear inside a [section]", origin,
                                    key_lines(text)["." + name], name));
  cfg.lines_ = key_lines(text);
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return raw(section, key).has_value();
}

std::optional<std::string> Config::raw(const std::string& section, const std::string& key) const {
  const auto sec = tree_.get_child_optional(boost::property_tree::path(section, '\0'));
  if (!sec) return std::nullopt;
  const auto node = sec->get_child_optional(boost::property_tree::path(key, '\0'));
  if (!node) return std::nullopt;
  return trim(node->data());
}

void Config::record(const std::string& section, const std::string& key, const std::string& value) {
  const std::string id = "[" + section + "] " + key;
  for (const auto& [k, v] : resolved_)
    if (k == id) return;
  resolved_.emplace_back(id, value);
  consumed_.push_back(section + "." + key);
}

void Config::fail(const std::string& section, const std::string& key,
                  const std::string& what) const {
  const auto it = lines_.find(section + "." + key);
  if (it != lines_.end())
    throw ConfigError(fmt::format("{}:{}: [{}] {}: {}", origin_, it->second, section, key, what));
  throw ConfigError(fmt::format("{}: [{}] {}: {}", origin_, section, key, what));
}

double Config::get_double(const std::string& section, const std::string& key) {
  const auto s = raw(section, key);
  if (!s) fail(section, key, "missing required key");
  const auto v = parse_double(*s);
  if (!v) fail(section, key, fmt::format("cannot parse '{}' as a number", *s));
  record(section, key, fmt::format("{:.17e}", *v));
  return *v;
}

double Config::get_double(const std::string& section, const std::string& key, double fallback) {
  if (!has(section, key)) {
    record(section, key, fmt::format("{:.17e}", fallback));
    return fallback;
  }
  return get_double(section, key);
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) {
  const auto s = raw(section, key);
  int v = fallback;
  if (s) {
    const auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
    if (ec != std::errc{} || ptr != s->data() + s->size())
      fail(section, key, fmt::format("cannot parse '{}' as an integer", *s));
  }
  record(section, key, std::to_string(v));
  return v;
}

cplx Config::get_complex(const std::string& section, const std::string& key) {
  const auto s = raw(section, key);
  if (!s) fail(section, key, "missing required key");
  const auto v = parse_complex(*s);
  if (!v) fail(section, key, fmt::format("cannot parse '{}' as a number or (re, im) pair", *s));
  record(section, key, format_complex(*v));
  return *v;
}

cplx Config::get_complex(const std::string& section, const std::string& key, cplx fallback) {
  if (!has(section, key)) {
    record(section, key, format_complex(fallback));
    return fallback;
  }
  return get_complex(section, key);
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) {
  const std::string v = raw(section, key).value_or(fallback);
  record(section, key, v);
  return v;
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) {
  const auto s = raw(section, key);
  bool v = fallback;
  if (s) {
    if (*s == "true" || *s == "1" || *s == "yes") v = true;
    else if (*s == "false" || *s == "0" || *s == "no") v = false;
    else fail(section, key, fmt::format("cannot parse '{}' as a boolean", *s));
  }
  record(section, key, v ? "true" : "false");
  return v;
}

void Config::require_all_consumed() const {
  for (const auto& [section, node] : tree_)
    for (const auto& [key, value] : node) {
      const std::string id = section + "." + key;
      if (std::find(consumed_.begin(), consumed_.end(), id) == consumed_.end())
        fail(section, key, "unknown key");
    }
}

SystemParams read_system(Config& cfg) {
  SystemParams p;
  p.omega_m = cfg.get_double("system", "omega_m", 1.0);
  p.kappa = cfg.get_double("system", "kappa", p.kappa);
  p.gamma_m = cfg.get_double("system", "gamma_m", p.gamma_m);
  p.g0 = cfg.get_double("system", "g0", p.g0);
  p.delta_a = cfg.get_double("system", "delta_a", p.delta_a);
  p.delta_eff = cfg.get_double("system", "delta_eff", p.delta_eff);
  p.n_a = cfg.get_double("system", "n_a", p.n_a);
  p.n_m = cfg.get_double("system", "n_m", p.n_m);
  p.phi = cfg.get_double("system", "phi", p.phi);
  return p;
}

CouplingSidebands read_coupling(Config& cfg) {
  CouplingSidebands c;
  c.g_minus1 = cfg.get_complex("coupling", "g_minus1", cplx{});
  c.g_0 = cfg.get_complex("coupling", "g_0");
  c.g_plus1 = cfg.get_complex("coupling", "g_plus1", cplx{});
  return c;
}

DriveSidebands read_drive(Config& cfg) {
  DriveSidebands d;
  d.eps_minus1 = cfg.get_complex("drive", "eps_minus1", cplx{});
  d.eps_0 = cfg.get_complex("drive", "eps_0", cplx{});
  d.eps_plus1 = cfg.get_complex("drive", "eps_plus1", cplx{});
  d.Omega = cfg.get_double("drive", "omega", 2.0);
  return d;
}

}  // namespace squeezesim
