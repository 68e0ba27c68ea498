#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tcopo/cavity.hpp"
#include "tcopo/config.hpp"
#include "tcopo/polarization.hpp"
#include "tcopo/sweep.hpp"
#include "tcopo/validate.hpp"

namespace {

using namespace tcopo;

struct CommonOpts {
  std::string config_path;
  std::optional<double> sigma;
  std::optional<double> coupling;
  std::optional<double> omega_min;
  std::optional<double> omega_max;
  std::optional<int> omega_points;
  std::optional<double> pump_variance;
  std::string output;
  std::optional<std::string> format;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "configuration file");
  cmd->add_option("--sigma", o.sigma,
                  "pump amplitude relative to threshold (>= 1 for sweeps)");
  cmd->add_option("--coupling", o.coupling,
                  "plate coupling ratio c = epsilon0 / kappa");
  cmd->add_option("--omega-min", o.omega_min, "lowest analysis frequency");
  cmd->add_option("--omega-max", o.omega_max, "highest analysis frequency");
  cmd->add_option("--omega-points", o.omega_points, "grid size");
  cmd->add_option("--pump-variance", o.pump_variance,
                  "pump quadrature variance (physical value 2)");
  cmd->add_option("--output", o.output, "output path");
  cmd->add_option("--format", o.format, "csv or svg")
      ->check(CLI::IsMember({"csv", "svg"}));
  cmd->add_option("--threads", o.threads, "worker threads for sweeps")
      ->check(CLI::Range(1, 256));
}

RunConfig build_config(const CommonOpts& o) {
  RunConfig cfg =
      o.config_path.empty() ? RunConfig{} : load_config_file(o.config_path);
  if (o.sigma) {
    cfg.drive.sigma = *o.sigma;
    cfg.drive.pump_intensity.reset();
    cfg.sweep.sigma_list.clear();
  }
  if (o.coupling) {
    if (*o.coupling < 0.0) {
      throw ConfigError("--coupling must be >= 0");
    }
    cfg.cavity.epsilon0 = *o.coupling * cfg.cavity.kappa;
    cfg.sweep.c_list.clear();
  }
  if (o.omega_min) cfg.sweep.omega_min = *o.omega_min;
  if (o.omega_max) cfg.sweep.omega_max = *o.omega_max;
  if (o.omega_points) cfg.sweep.omega_points = *o.omega_points;
  if (o.pump_variance) cfg.noise.pump_variance = *o.pump_variance;
  if (!o.output.empty()) cfg.output.path = o.output;
  if (o.format) {
    cfg.output.format =
        *o.format == "svg" ? OutputFormat::svg : OutputFormat::csv;
  }
  validate_config(cfg);
  return cfg;
}

int run_table(const CommonOpts& opts, const std::string& column,
              const std::string& default_stem) {
  const RunConfig cfg = build_config(opts);
  const auto rows = run_sweep(cfg, opts.threads);
  const bool svg = cfg.output.format == OutputFormat::svg;
  std::string path = cfg.output.path;
  if (path.empty()) path = default_stem + (svg ? ".svg" : ".csv");
  const std::string body =
      svg ? svg_for_column(rows, column, cfg.sweep.spacing == Spacing::log)
          : csv_string(rows);
  write_text_file(path, body);
  std::cout << "wrote " << path << " (" << rows.size() << " grid points)\n";
  return 0;
}

int run_threshold(const CommonOpts& opts) {
  const RunConfig cfg = build_config(opts);
  const ReducedParams p = cfg.reduced_params();
  const ThresholdBranches branches =
      threshold_branches(p.delta_a, p.epsilon0, p.kappa, p.g);
  const double lowest = 2.0 * p.kappa * p.kappa / (p.g * p.g);
  std::cout << "kappa                    : " << format_double(p.kappa) << "\n"
            << "g                        : " << format_double(p.g) << "\n"
            << "epsilon0                 : " << format_double(p.epsilon0)
            << "\n"
            << "delta                    : " << format_double(p.delta_a)
            << "\n"
            << "lower branch intensity   : " << format_double(branches.lower)
            << "\n"
            << "upper branch intensity   : " << format_double(branches.upper)
            << "\n"
            << "lowest threshold (delta=epsilon0) : " << format_double(lowest)
            << "\n"
            << "threshold pump amplitude : "
            << format_double(threshold_pump_amplitude(p.kappa, p.g)) << "\n";
  return 0;
}

int run_steady_state(const CommonOpts& opts) {
  const RunConfig cfg = build_config(opts);
  const ReducedParams p = cfg.reduced_params();
  const FieldState state = steady_state(p);
  const StokesMeanPair stokes = stokes_means(state);
  std::cout << "sigma                : " << format_double(p.sigma) << "\n"
            << "signal amplitude |J| : " << format_double(state.amplitude)
            << "\n"
            << "photon number |J|^2  : "
            << format_double(state.amplitude * state.amplitude) << "\n";
  if (p.sigma >= 1.0) {
    std::cout << "clamped pump         : "
              << format_double(threshold_pump_amplitude(p.kappa, p.g))
              << "\n";
  }
  const auto print_stokes = [](const char* label, const StokesMean& s) {
    std::cout << label << " s0=" << format_double(s.s0)
              << " s1=" << format_double(s.s1)
              << " s2=" << format_double(s.s2)
              << " s3=" << format_double(s.s3) << "\n";
  };
  print_stokes("stokes beam a        :", stokes.beam_a);
  print_stokes("stokes beam b        :", stokes.beam_b);
  return 0;
}

int run_figure(const CommonOpts& opts, int id) {
  const RunConfig cfg = build_config(opts);
  const FigureFiles files = make_figure(id, cfg);
  for (const std::string& path : files.paths) {
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

int run_validate(const CommonOpts& opts) {
  const RunConfig cfg = build_config(opts);
  if (cfg.output.path.empty()) {
    return run_validation(cfg, std::cout);
  }
  std::ofstream out(cfg.output.path);
  if (!out) {
    throw std::runtime_error("cannot write file: " + cfg.output.path);
  }
  const int code = run_validation(cfg, out);
  std::cout << "wrote " << cfg.output.path << " (exit " << code << ")\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-crystal optical parametric oscillator toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string column = "S_r";
  int figure_id = 0;
  int exit_code = 0;

  CLI::App* spectra = app.add_subcommand(
      "spectra", "sweep the six noise spectra over the frequency grid");
  add_common(spectra, opts);
  spectra->add_option("--column", column, "spectrum plotted in svg output");
  spectra->callback([&] { exit_code = run_table(opts, column, "spectra"); });

  CLI::App* criteria = app.add_subcommand(
      "criteria", "sweep the entanglement criteria over the frequency grid");
  add_common(criteria, opts);
  std::string criteria_column = "sum_crit";
  criteria->add_option("--column", criteria_column,
                       "criterion plotted in svg output");
  criteria->callback(
      [&] { exit_code = run_table(opts, criteria_column, "criteria"); });

  CLI::App* threshold = app.add_subcommand(
      "threshold", "print the oscillation threshold branches");
  add_common(threshold, opts);
  threshold->callback([&] { exit_code = run_threshold(opts); });

  CLI::App* steady = app.add_subcommand(
      "steady-state", "print the clamped operating point and mean field");
  add_common(steady, opts);
  steady->callback([&] { exit_code = run_steady_state(opts); });

  CLI::App* figure = app.add_subcommand(
      "figure", "reproduce a reference figure (csv plus svg)");
  add_common(figure, opts);
  figure->add_option("--id", figure_id, "figure number")->required();
  figure->callback([&] { exit_code = run_figure(opts, figure_id); });

  CLI::App* validate = app.add_subcommand(
      "validate", "compare the solver against every closed-form spectrum");
  add_common(validate, opts);
  validate->callback([&] { exit_code = run_validate(opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const tcopo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
