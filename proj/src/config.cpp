#include "tcopo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tcopo/noise.hpp"

namespace tcopo {

namespace {

std::string_view trim(std::string_view s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string_view::npos) return {};
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

double parse_double(std::string_view text, const std::string& key) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value))
    throw ConfigError(key + ": expected a finite number, got '" +
                      std::string(t) + "'");
  return value;
}

int parse_int(std::string_view text, const std::string& key) {
  const std::string_view t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(key + ": expected an integer, got '" + std::string(t) +
                      "'");
  return value;
}

std::vector<double> parse_list(std::string_view text, const std::string& key) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const std::string_view item =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                           : comma - start);
    if (trim(item).empty())
      throw ConfigError(key + ": empty list entry");
    out.push_back(parse_double(item, key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ConfigError(key + ": list must not be empty");
  return out;
}

}  // namespace

double RunConfig::resolved_sigma() const {
  if (drive.sigma) return *drive.sigma;
  if (drive.pump_intensity)
    return sigma_from_pump(*drive.pump_intensity, cavity.kappa, cavity.g);
  return 1.0;
}

double RunConfig::coupling_ratio() const {
  return cavity.epsilon0 / cavity.kappa;
}

std::vector<double> RunConfig::resolved_sigmas() const {
  if (!sweep.sigma_list.empty()) return sweep.sigma_list;
  return {resolved_sigma()};
}

std::vector<double> RunConfig::resolved_couplings() const {
  if (!sweep.c_list.empty()) return sweep.c_list;
  return {coupling_ratio()};
}

ReducedParams RunConfig::reduced_params() const {
  ReducedParams p;
  p.kappa = cavity.kappa;
  p.g = cavity.g;
  p.epsilon0 = cavity.epsilon0;
  p.delta_a = cavity.delta_a.value_or(cavity.epsilon0);
  p.delta_b = cavity.delta_b.value_or(cavity.epsilon0);
  p.psi = cavity.psi;
  p.sigma = resolved_sigma();
  return p;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::string section;
  std::set<std::string, std::less<>> seen;
  bool have_kappa = false;
  bool have_g = false;

  size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                       : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(line_no) +
                          ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "cavity" && section != "drive" && section != "noise" &&
          section != "sweep" && section != "output")
        throw ConfigError("unknown section [" + section + "]");
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key_name(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError("key '" + key_name + "' appears before any section");
    const std::string key = section + "." + key_name;
    if (!seen.insert(key).second)
      throw ConfigError("duplicate key " + key);

    if (key == "cavity.kappa") {
      cfg.cavity.kappa = parse_double(value, key);
      have_kappa = true;
    } else if (key == "cavity.g") {
      cfg.cavity.g = parse_double(value, key);
      have_g = true;
    } else if (key == "cavity.epsilon0") {
      cfg.cavity.epsilon0 = parse_double(value, key);
    } else if (key == "cavity.delta_a") {
      cfg.cavity.delta_a = parse_double(value, key);
    } else if (key == "cavity.delta_b") {
      cfg.cavity.delta_b = parse_double(value, key);
    } else if (key == "cavity.psi") {
      cfg.cavity.psi = parse_double(value, key);
    } else if (key == "drive.sigma") {
      cfg.drive.sigma = parse_double(value, key);
    } else if (key == "drive.pump_intensity") {
      cfg.drive.pump_intensity = parse_double(value, key);
    } else if (key == "noise.pump_variance") {
      cfg.noise.pump_variance = parse_double(value, key);
    } else if (key == "sweep.omega_min") {
      cfg.sweep.omega_min = parse_double(value, key);
    } else if (key == "sweep.omega_max") {
      cfg.sweep.omega_max = parse_double(value, key);
    } else if (key == "sweep.omega_points") {
      cfg.sweep.omega_points = parse_int(value, key);
    } else if (key == "sweep.spacing") {
      if (value == "log")
        cfg.sweep.spacing = Spacing::log;
      else if (value == "linear")
        cfg.sweep.spacing = Spacing::linear;
      else
        throw ConfigError("sweep.spacing: expected log or linear");
    } else if (key == "sweep.sigma_list") {
      cfg.sweep.sigma_list = parse_list(value, key);
    } else if (key == "sweep.c_list") {
      cfg.sweep.c_list = parse_list(value, key);
    } else if (key == "output.path") {
      cfg.output.path = std::string(value);
    } else if (key == "output.format") {
      if (value == "csv")
        cfg.output.format = OutputFormat::csv;
      else if (value == "svg")
        cfg.output.format = OutputFormat::svg;
      else
        throw ConfigError("output.format: expected csv or svg");
    } else {
      throw ConfigError("unknown key " + key);
    }
  }

  if (!have_kappa) throw ConfigError("missing required key cavity.kappa");
  if (!have_g) throw ConfigError("missing required key cavity.g");
  if (!cfg.drive.sigma && !cfg.drive.pump_intensity)
    throw ConfigError(
        "missing required key: one of drive.sigma or drive.pump_intensity");

  validate_config(cfg);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_config(const RunConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };

  if (!(cfg.cavity.kappa > 0.0)) fail("cavity.kappa must be positive");
  if (!(cfg.cavity.g > 0.0)) fail("cavity.g must be positive");
  if (!(cfg.cavity.epsilon0 >= 0.0))
    fail("cavity.epsilon0 must be non-negative");
  if (!std::isfinite(cfg.cavity.psi)) fail("cavity.psi must be finite");

  if (cfg.drive.sigma && cfg.drive.pump_intensity)
    fail("drive.sigma and drive.pump_intensity are mutually exclusive");
  if (cfg.drive.sigma && !(*cfg.drive.sigma >= 0.0))
    fail("drive.sigma must be non-negative");
  if (cfg.drive.pump_intensity && !(*cfg.drive.pump_intensity >= 0.0))
    fail("drive.pump_intensity must be non-negative");

  if (!(cfg.noise.pump_variance > 0.0))
    fail("noise.pump_variance must be positive");

  if (!(cfg.sweep.omega_min >= kOmegaMin))
    fail("sweep.omega_min must be at least 1e-6");
  if (!(cfg.sweep.omega_max <= kOmegaMax))
    fail("sweep.omega_max must be at most 1e6");
  if (!(cfg.sweep.omega_max > cfg.sweep.omega_min))
    fail("sweep.omega_max must exceed sweep.omega_min");
  if (cfg.sweep.omega_points < 2)
    fail("sweep.omega_points must be at least 2");

  for (const double v : cfg.sweep.sigma_list)
    if (!(v >= 1.0)) fail("sweep.sigma_list: values must be at least 1");
  for (const double v : cfg.sweep.c_list)
    if (!(v >= 0.0)) fail("sweep.c_list: values must be non-negative");
}

}  // namespace tcopo
