// End-to-end acceptance checks. Each numbered criterion prints exactly one
// PASS/FAIL line with the measured quantity and its required bound; the
// process exits nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tcopo/cavity.hpp"
#include "tcopo/config.hpp"
#include "tcopo/noise.hpp"
#include "tcopo/polarization.hpp"
#include "tcopo/sweep.hpp"
#include "tcopo/validate.hpp"

using namespace tcopo;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const char* title, bool pass,
            const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number,
              title, detail.c_str());
  if (!pass) ++g_failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct SixSpectra {
  double values[6];
};

SixSpectra numeric_six(double omega, double sigma, double c, double v) {
  const SpectralMatrix sm = spectral_matrix(omega, sigma, c, v);
  const CombinationSet combos = alpha_combinations();
  const StokesSpectra stokes = stokes_fluctuation_spectra(sm);
  return {{combination_spectrum(sm, combos.p),
           combination_spectrum(sm, combos.q),
           combination_spectrum(sm, combos.r),
           combination_spectrum(sm, combos.s), stokes.s1_plus,
           stokes.s2_minus}};
}

SixSpectra analytic_six(double omega, double sigma, double c) {
  const QuadSpectra quads = analytic_spectra(omega, sigma, c);
  const StokesClosedForm stokes = analytic_stokes_spectra(omega, sigma, c);
  return {{quads.p, quads.q, quads.r, quads.s, stokes.s1_plus,
           stokes.s2_minus}};
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-15});
}

Eigen::Matrix4d sum_block_reference(double sigma, double c) {
  Eigen::Matrix4d m;
  const double u = sigma - 1.0;
  m << -2.0 * u, 0.0, -c, c,
       0.0, -2.0 * u, c, -c,
       c, -c, -2.0 * sigma, 0.0,
       -c, c, 0.0, -2.0 * sigma;
  return m;
}

Eigen::Matrix4d diff_block_reference(double c) {
  Eigen::Matrix4d m;
  m << -2.0, 0.0, -c, -c,
       0.0, -2.0, -c, -c,
       c, c, 0.0, 0.0,
       c, c, 0.0, 0.0;
  return m;
}

void criterion_1() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (double kappa : {1e-4, 1e-3, 1e-2}) {
    for (double eps : {1e-4, 1e-3, 1e-2}) {
      const ReducedParams p =
          ReducedParams::working_point(kappa, 1e-3, eps, 1.0);
      const Matrix4c m =
          round_trip_reduced(p, threshold_pump_amplitude(kappa, p.g));
      Vector4c v;
      v << Complex(1, 0), Complex(1, 0), Complex(0, -1), Complex(0, -1);
      worst = std::max(worst, (m * v - v).cwiseAbs().maxCoeff());
    }
  }
  const double elapsed = ms_since(start);
  report(1, "threshold eigenvector is a round-trip fixed point",
         worst < 1e-12 && elapsed < 100.0,
         "max residual " + sci(worst) + " < 1e-12, " + sci(elapsed) +
             " ms < 100 ms");
}

void criterion_2() {
  const double kappa = 1e-3, g = 2e-3, eps = 1e-3;
  const ThresholdBranches branches = threshold_branches(eps, eps, kappa, g);
  const double expected = 2.0 * kappa * kappa / (g * g);
  const double thr = rel_err(branches.lower, expected);

  const ReducedParams wp = ReducedParams::working_point(1e-3, 1e-3, 1e-3, 1.0);
  const double at_wp =
      stationarity_residual(wp, threshold_pump_amplitude(1e-3, 1e-3));

  ReducedParams detuned = wp;
  detuned.delta_a = 2e-3;
  detuned.delta_b = -1e-3;
  const double off =
      stationarity_residual(detuned, threshold_pump_amplitude(1e-3, 1e-3));

  const bool pass = thr < 1e-12 && at_wp <= 1e-9 && off >= 100.0 * at_wp;
  report(2, "lowest threshold intensity and stationary working point", pass,
         "threshold rel err " + sci(thr) + " < 1e-12, residual " +
             sci(at_wp) + " <= 1e-9, detuned/working ratio " +
             sci(off / std::max(at_wp, 1e-300)) + " >= 100");
}

void criterion_3() {
  double worst = 0.0;
  for (double sigma : {1.0, 1.25, 1.5, 2.0}) {
    for (double c : {0.0, 0.2, 1.0, 2.0}) {
      const DriftMatrix8 drift = drift_matrix(sigma, c);
      const BlockDecomposition decomp = block_decomposition(drift);
      Matrix8d expected = Matrix8d::Zero();
      expected.topLeftCorner<4, 4>() = sum_block_reference(sigma, c);
      expected.bottomRightCorner<4, 4>() = diff_block_reference(c);
      const Matrix8d rotated =
          decomp.transform * drift.m * decomp.transform.transpose();
      worst = std::max(worst, (rotated - expected).cwiseAbs().maxCoeff());
      const Matrix8d gram =
          decomp.transform * decomp.transform.transpose();
      worst = std::max(worst,
                       (gram - Matrix8d::Identity()).cwiseAbs().maxCoeff());
    }
  }
  report(3, "drift matrix splits into the two commuting blocks",
         worst < 1e-12, "max deviation " + sci(worst) + " < 1e-12");
}

void criterion_4() {
  const auto start = Clock::now();
  const std::vector<double> omegas = log_spaced(0.01, 100.0, 200);
  double worst = 0.0;
  for (double c : {0.0, 0.2, 1.0}) {
    for (double omega : omegas) {
      const SixSpectra numeric = numeric_six(omega, 1.0, c, 2.0);
      const SixSpectra analytic = analytic_six(omega, 1.0, c);
      for (int k = 0; k < 6; ++k) {
        worst = std::max(worst, rel_err(numeric.values[k],
                                        analytic.values[k]));
      }
    }
  }
  const double elapsed = ms_since(start);
  report(4, "all six spectra match the closed forms at threshold",
         worst < 1e-9 && elapsed < 2000.0,
         "max rel err " + sci(worst) + " < 1e-9 over 600 grid points, " +
             sci(elapsed) + " ms < 2000 ms");
}

void criterion_5() {
  const std::vector<double> omegas = log_spaced(0.01, 100.0, 100);
  double worst_v2 = 0.0;
  double gap_v1 = 0.0;
  for (double omega : omegas) {
    const SixSpectra v2 = numeric_six(omega, 1.1, 0.0, 2.0);
    const SixSpectra v1 = numeric_six(omega, 1.1, 0.0, 1.0);
    const SixSpectra closed = analytic_six(omega, 1.1, 0.0);
    for (int k : {0, 1, 5}) {
      worst_v2 = std::max(worst_v2, rel_err(v2.values[k], closed.values[k]));
    }
    gap_v1 = std::max(gap_v1, rel_err(v1.values[1], closed.values[1]));
  }

  SweepGrid v1_grid{log_spaced(0.01, 100.0, 50), {1.1}, {0.0}};
  const ValidationReport v1_report = validate_spectra(v1_grid, 1.0);
  const bool v1_documented =
      v1_report.has_documented_deviation() && !v1_report.has_strict_failure();

  SweepGrid coupled_grid{log_spaced(0.01, 100.0, 50), {1.5}, {1.0}};
  const ValidationReport coupled = validate_spectra(coupled_grid, 2.0);
  const bool coupled_clean = coupled.mismatches.empty();

  const bool pass =
      worst_v2 < 1e-9 && gap_v1 > 1e-3 && v1_documented && coupled_clean;
  report(5, "pump variance 2 reproduces the above-threshold spectra", pass,
         "v=2 max rel err " + sci(worst_v2) + " < 1e-9, v=1 deviation " +
             sci(gap_v1) + " > 1e-3 and documented, coupled case clean");
}

void criterion_6() {
  double worst = 0.0;
  const std::vector<double> omegas = log_spaced(0.01, 100.0, 50);
  for (double c : {0.0, 0.4, 1.0}) {
    for (double omega : omegas) {
      const double base = numeric_six(omega, 1.0, c, 2.0).values[4];
      for (double sigma : {1.3, 2.0}) {
        const double other = numeric_six(omega, sigma, c, 2.0).values[4];
        worst = std::max(worst, std::abs(other - base));
      }
    }
  }
  report(6, "the squeezed difference combination is pump independent",
         worst < 1e-10, "max spread " + sci(worst) + " < 1e-10");
}

void criterion_7() {
  double high = 0.0;
  for (double sigma : {1.0, 1.3}) {
    for (double c : {0.0, 1.0}) {
      const SixSpectra s = numeric_six(1e3, sigma, c, 2.0);
      for (double value : s.values) {
        high = std::max(high, std::abs(value - 1.0));
      }
    }
  }
  const SixSpectra low = numeric_six(1e-4, 1.0, 0.0, 2.0);
  const double floor_level = std::max(low.values[4], low.values[5]);
  report(7, "spectra reach shot noise at high frequency and vanish at zero",
         high < 1e-3 && floor_level < 1e-7,
         "max |S-1| " + sci(high) + " < 1e-3 at omega=1e3, min spectra " +
             sci(floor_level) + " < 1e-7 at omega=1e-4");
}

void criterion_8() {
  const std::vector<double> omegas = log_spaced(0.01, 100.0, 400);
  bool below_unity = true;
  for (double omega : omegas) {
    if (omega > 1.0) break;
    const SpectralMatrix sm = spectral_matrix(omega, 1.0, 0.0);
    const StokesSpectra stokes = stokes_fluctuation_spectra(sm);
    const double sum = sum_criterion(stokes.s1_plus, stokes.s2_minus).value;
    const double epr = epr_criterion(stokes).value;
    if (!(sum < 1.0 && epr < 1.0)) below_unity = false;
  }

  double best_omega = 0.0, best_sum = 1e300;
  for (double omega : log_spaced(0.01, 100.0, 2000)) {
    const SpectralMatrix sm = spectral_matrix(omega, 1.0, 1.0);
    const StokesSpectra stokes = stokes_fluctuation_spectra(sm);
    const double sum = sum_criterion(stokes.s1_plus, stokes.s2_minus).value;
    if (sum < best_sum) {
      best_sum = sum;
      best_omega = omega;
    }
  }
  const bool min_in_window = best_omega >= 0.5 && best_omega <= 2.0;

  const SpectralMatrix sm = spectral_matrix(1.0, 1.0, 0.0);
  const StokesSpectra stokes = stokes_fluctuation_spectra(sm);
  const double sum = sum_criterion(stokes.s1_plus, stokes.s2_minus).value;
  const double half_product =
      0.5 * product_criterion(stokes.s1_plus, stokes.s2_minus).value;
  const bool point_ok =
      std::abs(sum - 0.5) < 1e-9 && std::abs(half_product - 0.125) < 1e-9;

  report(8, "entanglement holds below unit frequency and at the fixed point",
         below_unity && min_in_window && point_ok,
         std::string("sum and EPR < 1 for omega <= 1: ") +
             (below_unity ? "yes" : "no") + ", c=1 sum minimum at omega " +
             sci(best_omega) + " in [0.5, 2], sum " + sci(sum) +
             " and half product " + sci(half_product) +
             " within 1e-9 of 0.5 and 0.125");
}

void criterion_9() {
  RunConfig cfg;
  cfg.sweep.omega_min = 0.01;
  cfg.sweep.omega_max = 100.0;
  cfg.sweep.omega_points = 1250;
  cfg.sweep.sigma_list = {1.0, 1.25};
  cfg.sweep.c_list = {0.0, 0.5, 1.0, 2.0};

  const auto start = Clock::now();
  const auto rows = run_sweep(cfg, 1);
  const double elapsed = ms_since(start);

  const std::string serial = csv_string(rows);
  const std::string repeat = csv_string(run_sweep(cfg, 1));
  const std::string threaded = csv_string(run_sweep(cfg, 4));
  const bool identical = serial == repeat && serial == threaded;

  report(9, "a ten-thousand-point sweep is fast and deterministic",
         rows.size() == 10000 && elapsed < 1000.0 && identical,
         std::to_string(rows.size()) + " rows in " + sci(elapsed) +
             " ms < 1000 ms, byte-identical csv across runs and threads: " +
             (identical ? "yes" : "no"));
}

void criterion_10() {
  const SpectralMatrix vacuum = SpectralMatrix::identity();
  const CombinationSet combos = alpha_combinations();
  const StokesSpectra stokes = stokes_fluctuation_spectra(vacuum);
  bool unit = true;
  for (const Vector8d* u : {&combos.p, &combos.q, &combos.r, &combos.s}) {
    unit = unit && combination_spectrum(vacuum, *u) == 1.0;
  }
  unit = unit && stokes.s1_plus == 1.0 && stokes.s2_minus == 1.0;

  const Criterion sum = sum_criterion(stokes.s1_plus, stokes.s2_minus);
  const Criterion prod = product_criterion(stokes.s1_plus, stokes.s2_minus);
  const Criterion epr = epr_criterion(stokes);
  const bool values_unit =
      sum.value == 1.0 && prod.value == 1.0 && epr.value == 1.0;
  // The product bound admits vacuum: its published threshold is 2, so the
  // flag stays raised at exactly 1. Sum and EPR sit on their boundaries
  // and must not flag.
  const bool flags_ok = !sum.flag && !epr.flag && prod.flag;

  report(10, "vacuum input calibrates every spectrum and criterion to one",
         unit && values_unit && flags_ok,
         std::string("all spectra and criterion values exactly 1: ") +
             (unit && values_unit ? "yes" : "no") +
             ", boundary flags: sum/EPR false, product true at its "
             "threshold of 2");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d of 10 criteria FAILED\n", g_failures);
  return 1;
}
