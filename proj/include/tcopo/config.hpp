#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tcopo/cavity.hpp"

namespace tcopo {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Spacing { log, linear };
enum class OutputFormat { csv, svg };

// Run settings from a flat sectioned key=value file. The cavity block is in
// reduced units; drive takes either the pump ratio directly or the injected
// pump intensity to convert. Detunings default to the plate coupling (the
// locked working point).
struct RunConfig {
  struct Cavity {
    double kappa = 0.01;
    double g = 0.001;
    double epsilon0 = 0.0;
    std::optional<double> delta_a;
    std::optional<double> delta_b;
    double psi = 0.0;
  } cavity;

  struct Drive {
    std::optional<double> sigma;
    std::optional<double> pump_intensity;
  } drive;

  struct Noise {
    double pump_variance = 2.0;
  } noise;

  struct Sweep {
    double omega_min = 0.01;
    double omega_max = 100.0;
    int omega_points = 200;
    Spacing spacing = Spacing::log;
    std::vector<double> sigma_list;  // empty: use the drive point
    std::vector<double> c_list;      // empty: use epsilon0 / kappa
  } sweep;

  struct Output {
    std::string path;  // empty: subcommand default
    OutputFormat format = OutputFormat::csv;
  } output;

  double resolved_sigma() const;
  double coupling_ratio() const;
  std::vector<double> resolved_sigmas() const;
  std::vector<double> resolved_couplings() const;
  ReducedParams reduced_params() const;
};

// Parses and validates; throws ConfigError naming the offending key.
RunConfig parse_config(std::string_view text);
RunConfig load_config_file(const std::string& path);

// Re-checks invariants after programmatic edits (e.g. flag overrides).
void validate_config(const RunConfig& cfg);

}  // namespace tcopo
