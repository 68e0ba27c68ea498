#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "tcopo/config.hpp"

using namespace tcopo;

namespace {

// smallest accepted file: cavity rates plus one drive key
constexpr const char* kMinimalConfig =
    "[cavity]\n"
    "kappa = 0.01\n"
    "g = 0.001\n"
    "[drive]\n"
    "sigma = 1\n";

std::string error_text(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config fills documented defaults") {
  const RunConfig cfg = parse_config(kMinimalConfig);
  CHECK(cfg.cavity.kappa == 0.01);
  CHECK(cfg.cavity.g == 0.001);
  CHECK(cfg.cavity.epsilon0 == 0.0);
  CHECK_FALSE(cfg.cavity.delta_a.has_value());
  CHECK_FALSE(cfg.cavity.delta_b.has_value());
  CHECK(cfg.cavity.psi == 0.0);
  CHECK(cfg.drive.sigma.has_value());
  CHECK(*cfg.drive.sigma == 1.0);
  CHECK_FALSE(cfg.drive.pump_intensity.has_value());
  CHECK(cfg.noise.pump_variance == 2.0);
  CHECK(cfg.sweep.omega_min == 0.01);
  CHECK(cfg.sweep.omega_max == 100.0);
  CHECK(cfg.sweep.omega_points == 200);
  CHECK(cfg.sweep.spacing == Spacing::log);
  CHECK(cfg.sweep.sigma_list.empty());
  CHECK(cfg.sweep.c_list.empty());
  CHECK(cfg.output.format == OutputFormat::csv);
}

TEST_CASE("resolved accessors") {
  RunConfig cfg = parse_config(kMinimalConfig);
  CHECK(cfg.resolved_sigma() == 1.0);
  CHECK(cfg.coupling_ratio() == 0.0);
  CHECK(cfg.resolved_sigmas() == std::vector<double>{1.0});
  CHECK(cfg.resolved_couplings() == std::vector<double>{0.0});

  cfg.cavity.epsilon0 = 0.002;
  CHECK(cfg.coupling_ratio() == doctest::Approx(0.2).epsilon(1e-15));

  cfg.sweep.sigma_list = {1.0, 1.5};
  cfg.sweep.c_list = {0.0, 1.0};
  CHECK(cfg.resolved_sigmas() == std::vector<double>{1.0, 1.5});
  CHECK(cfg.resolved_couplings() == std::vector<double>{0.0, 1.0});
}

TEST_CASE("reduced parameters default to the working point") {
  RunConfig cfg = parse_config(
      "[cavity]\n"
      "kappa = 0.01\n"
      "g = 0.001\n"
      "epsilon0 = 0.004\n"
      "[drive]\n"
      "sigma = 1.5\n");
  const ReducedParams p = cfg.reduced_params();
  CHECK(p.kappa == 0.01);
  CHECK(p.g == 0.001);
  CHECK(p.epsilon0 == 0.004);
  CHECK(p.delta_a == 0.004);
  CHECK(p.delta_b == 0.004);
  CHECK(p.psi == 0.0);
  CHECK(p.sigma == 1.5);

  cfg.cavity.delta_a = 0.001;
  CHECK(cfg.reduced_params().delta_a == 0.001);
  CHECK(cfg.reduced_params().delta_b == 0.004);
}

TEST_CASE("pump intensity resolves to the documented sigma") {
  const RunConfig cfg = parse_config(
      "[cavity]\n"
      "kappa = 0.02\n"
      "g = 0.002\n"
      "[drive]\n"
      "pump_intensity = 800\n");
  CHECK(cfg.resolved_sigma() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("sigma and pump intensity are mutually exclusive") {
  const std::string msg = error_text(
      "[cavity]\n"
      "kappa = 0.01\n"
      "g = 0.001\n"
      "[drive]\n"
      "sigma = 1.2\n"
      "pump_intensity = 100\n");
  CHECK(msg.find("drive.sigma") != std::string::npos);
  CHECK(msg.find("drive.pump_intensity") != std::string::npos);
}

TEST_CASE("missing required keys are named") {
  CHECK(error_text("[cavity]\ng = 0.001\n[drive]\nsigma = 1\n")
            .find("cavity.kappa") != std::string::npos);
  CHECK(error_text("[cavity]\nkappa = 0.01\n[drive]\nsigma = 1\n")
            .find("cavity.g") != std::string::npos);
  const std::string drive = error_text("[cavity]\nkappa=0.01\ng=0.001\n");
  CHECK(drive.find("drive.sigma") != std::string::npos);
  CHECK(drive.find("drive.pump_intensity") != std::string::npos);
}

TEST_CASE("unknown sections and keys are rejected by path") {
  CHECK(error_text(std::string(kMinimalConfig) + "[laser]\npower = 3\n")
            .find("[laser]") != std::string::npos);
  CHECK(error_text(std::string(kMinimalConfig) + "[noise]\nfloor = 3\n")
            .find("noise.floor") != std::string::npos);
  CHECK(error_text("kappa = 0.01\n").find("before any section") !=
        std::string::npos);
}

TEST_CASE("duplicate keys are rejected") {
  const std::string msg = error_text(
      "[cavity]\n"
      "kappa = 0.01\n"
      "kappa = 0.02\n"
      "g = 0.001\n"
      "[drive]\n"
      "sigma = 1\n");
  CHECK(msg.find("duplicate") != std::string::npos);
  CHECK(msg.find("cavity.kappa") != std::string::npos);
}

TEST_CASE("malformed numbers report the key and the text") {
  const std::string msg = error_text(
      "[cavity]\n"
      "kappa = fast\n"
      "g = 0.001\n"
      "[drive]\n"
      "sigma = 1\n");
  CHECK(msg.find("cavity.kappa") != std::string::npos);
  CHECK(msg.find("fast") != std::string::npos);
  CHECK(error_text(std::string(kMinimalConfig) +
                   "[sweep]\nomega_points = 2.5\n")
            .find("omega_points") != std::string::npos);
}

TEST_CASE("comments, blank lines, and spacing variants parse") {
  const RunConfig cfg = parse_config(
      "# pump at threshold\n"
      "\n"
      "[cavity]\n"
      "  kappa=0.01  \n"
      "g =\t0.001\n"
      "; alt comment\n"
      "[drive]\n"
      "sigma = 1\n"
      "[sweep]\n"
      "sigma_list = 1, 1.5, 2\n"
      "c_list = 0,1\n");
  CHECK(cfg.sweep.sigma_list == std::vector<double>{1.0, 1.5, 2.0});
  CHECK(cfg.sweep.c_list == std::vector<double>{0.0, 1.0});
}

TEST_CASE("enum keys accept only documented values") {
  RunConfig cfg = parse_config(std::string(kMinimalConfig) +
                               "[sweep]\nspacing = linear\n"
                               "[output]\nformat = svg\npath = out.svg\n");
  CHECK(cfg.sweep.spacing == Spacing::linear);
  CHECK(cfg.output.format == OutputFormat::svg);
  CHECK(cfg.output.path == "out.svg");
  CHECK(error_text(std::string(kMinimalConfig) + "[sweep]\nspacing = cubic\n")
            .find("spacing") != std::string::npos);
  CHECK(error_text(std::string(kMinimalConfig) + "[output]\nformat = png\n")
            .find("format") != std::string::npos);
}

TEST_CASE("range invariants are enforced") {
  CHECK(error_text("[cavity]\nkappa = 0\ng = 0.001\n[drive]\nsigma = 1\n")
            .find("cavity.kappa") != std::string::npos);
  CHECK(error_text("[cavity]\nkappa = 0.01\ng = -1\n[drive]\nsigma = 1\n")
            .find("cavity.g") != std::string::npos);
  CHECK(error_text(std::string(kMinimalConfig) + "[sweep]\nomega_min = 0\n")
            .find("omega_min") != std::string::npos);
  CHECK(error_text(std::string(kMinimalConfig) +
                   "[sweep]\nomega_min = 5\nomega_max = 5\n")
            .find("omega_max") != std::string::npos);
  CHECK(error_text(std::string(kMinimalConfig) + "[sweep]\nomega_points = 1\n")
            .find("omega_points") != std::string::npos);
  CHECK(error_text(std::string(kMinimalConfig) + "[sweep]\nsigma_list = 0.5\n")
            .find("sigma_list") != std::string::npos);
  CHECK(error_text(std::string(kMinimalConfig) + "[sweep]\nc_list = -0.1\n")
            .find("c_list") != std::string::npos);
  CHECK(error_text(std::string(kMinimalConfig) +
                   "[noise]\npump_variance = 0\n")
            .find("pump_variance") != std::string::npos);
  CHECK(error_text("[cavity]\nkappa = 0.01\ng = 0.001\n"
                   "[drive]\npump_intensity = -4\n")
            .find("pump_intensity") != std::string::npos);
}

TEST_CASE("config file loader") {
  const std::string path = "test_config_roundtrip.ini";
  {
    std::ofstream out(path);
    out << kMinimalConfig;
  }
  const RunConfig cfg = load_config_file(path);
  CHECK(cfg.resolved_sigma() == 1.0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config_file("no_such_file.ini"), ConfigError);
}
