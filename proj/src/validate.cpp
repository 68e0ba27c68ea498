#include "tcopo/validate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "tcopo/cavity.hpp"
#include "tcopo/polarization.hpp"
#include "tcopo/sweep.hpp"

namespace tcopo {
namespace {

constexpr const char* kSpectrumNames[6] = {"S_p",   "S_q",  "S_r",
                                           "S_s",   "S_S1p", "S_S2m"};

struct SixSpectra {
  double values[6];
};

SixSpectra numeric_six(double omega, double sigma, double c,
                       double pump_variance) {
  const SpectralMatrix sm = spectral_matrix(omega, sigma, c, pump_variance);
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

double relative_error(double numeric, double analytic) {
  const double scale =
      std::max({std::abs(numeric), std::abs(analytic), 1e-15});
  return std::abs(numeric - analytic) / scale;
}

// only the pump-carrying spectra depend on the pump variance model
bool pump_sensitive(int spectrum_index) {
  return spectrum_index == 0 || spectrum_index == 1 || spectrum_index == 5;
}

std::string regime_name(double sigma, double c) {
  std::string name = sigma == 1.0 ? "sigma=1" : "sigma>1";
  name += c == 0.0 ? ", c=0" : ", c>0";
  return name;
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

}  // namespace

bool ValidationReport::has_strict_failure() const {
  return std::any_of(mismatches.begin(), mismatches.end(),
                     [](const SpectrumMismatch& m) { return !m.documented; });
}

bool ValidationReport::has_documented_deviation() const {
  return std::any_of(mismatches.begin(), mismatches.end(),
                     [](const SpectrumMismatch& m) { return m.documented; });
}

ValidationReport validate_spectra(const SweepGrid& grid, double pump_variance,
                                  double tolerance) {
  ValidationReport report;
  report.pump_variance = pump_variance;
  report.tolerance = tolerance;

  std::map<std::pair<std::string, std::string>, std::size_t> stat_index;
  for (double sigma : grid.sigmas) {
    for (double c : grid.couplings) {
      const bool regime_documented =
          sigma > 1.0 && (pump_variance != 2.0 || c > 0.0);
      for (double omega : grid.omegas) {
        const SixSpectra numeric =
            numeric_six(omega, sigma, c, pump_variance);
        const SixSpectra analytic = analytic_six(omega, sigma, c);
        for (int k = 0; k < 6; ++k) {
          const bool documented = regime_documented && pump_sensitive(k);
          const double rel = relative_error(numeric.values[k],
                                            analytic.values[k]);
          const auto key =
              std::make_pair(std::string(kSpectrumNames[k]),
                             regime_name(sigma, c));
          auto it = stat_index.find(key);
          if (it == stat_index.end()) {
            it = stat_index.emplace(key, report.stats.size()).first;
            RegimeStat stat;
            stat.spectrum = key.first;
            stat.regime = key.second;
            stat.documented = documented;
            report.stats.push_back(stat);
          }
          RegimeStat& stat = report.stats[it->second];
          stat.points += 1;
          stat.max_rel_err = std::max(stat.max_rel_err, rel);
          stat.documented = stat.documented || documented;
          if (rel > tolerance) {
            report.mismatches.push_back({kSpectrumNames[k], omega, sigma, c,
                                         numeric.values[k],
                                         analytic.values[k], rel, documented});
          }
        }
      }
    }
  }
  return report;
}

int run_validation(const RunConfig& cfg, std::ostream& out) {
  validate_config(cfg);
  SweepGrid grid;
  grid.sigmas = cfg.resolved_sigmas();
  grid.couplings = cfg.resolved_couplings();
  for (double s : grid.sigmas) {
    if (s < 1.0) {
      throw ConfigError("validation requires sigma >= 1, got " +
                        format_double(s));
    }
  }
  grid.omegas = cfg.sweep.spacing == Spacing::log
                    ? log_spaced(cfg.sweep.omega_min, cfg.sweep.omega_max,
                                 cfg.sweep.omega_points)
                    : lin_spaced(cfg.sweep.omega_min, cfg.sweep.omega_max,
                                 cfg.sweep.omega_points);

  const ValidationReport report =
      validate_spectra(grid, cfg.noise.pump_variance);

  out << "spectrum validation report\n";
  out << "==========================\n";
  out << "pump variance   : " << format_double(report.pump_variance) << "\n";
  out << "tolerance       : " << sci(report.tolerance) << "\n";
  out << "omega grid      : " << grid.omegas.size() << " points in ["
      << format_double(cfg.sweep.omega_min) << ", "
      << format_double(cfg.sweep.omega_max) << "]\n";
  out << "sigma values    :";
  for (double s : grid.sigmas) out << " " << format_double(s);
  out << "\ncoupling values :";
  for (double c : grid.couplings) out << " " << format_double(c);
  out << "\n\n";

  out << "max relative error against the closed forms\n";
  out << std::left << std::setw(8) << "spectrum" << std::setw(18) << " regime"
      << std::right << std::setw(8) << "points" << std::setw(12) << "max err"
      << "  verdict\n";
  for (const RegimeStat& stat : report.stats) {
    const bool ok = stat.max_rel_err <= report.tolerance;
    const char* verdict =
        ok ? "ok" : (stat.documented ? "DOCUMENTED" : "FAIL");
    out << std::left << std::setw(8) << stat.spectrum << " " << std::setw(17)
        << stat.regime << std::right << std::setw(8) << stat.points
        << std::setw(12) << sci(stat.max_rel_err) << "  " << verdict << "\n";
  }
  out << "\n";

  if (!report.mismatches.empty()) {
    out << "mismatching points (first "
        << std::min<std::size_t>(report.mismatches.size(), 12) << " of "
        << report.mismatches.size() << ")\n";
    std::size_t shown = 0;
    for (const SpectrumMismatch& m : report.mismatches) {
      if (shown++ == 12) break;
      out << "  " << m.spectrum << " omega=" << format_double(m.omega)
          << " sigma=" << format_double(m.sigma)
          << " c=" << format_double(m.c) << " numeric=" << sci(m.numeric)
          << " closed=" << sci(m.analytic) << " rel=" << sci(m.rel_err)
          << (m.documented ? "  [documented]" : "  [unexplained]") << "\n";
    }
    out << "\n";
  }

  // The closed forms bake in a pump quadrature variance of 2 (the vacuum
  // value of an unsqueezed pump read in these units). Running the solver
  // with v = 1 instead shifts every pump-carrying spectrum above threshold;
  // the table makes the shift visible at sigma = 1.1, c = 0.
  {
    const double sigma = 1.1, c = 0.0;
    out << "pump variance reconciliation (sigma=1.1, c=0)\n";
    out << std::left << std::setw(8) << "spectrum" << std::right
        << std::setw(10) << "omega" << std::setw(14) << "closed"
        << std::setw(14) << "solver v=2" << std::setw(14) << "solver v=1"
        << "\n";
    for (double omega : {0.01, 0.1, 1.0, 10.0}) {
      const SixSpectra closed = analytic_six(omega, sigma, c);
      const SixSpectra v2 = numeric_six(omega, sigma, c, 2.0);
      const SixSpectra v1 = numeric_six(omega, sigma, c, 1.0);
      for (int k : {0, 1, 5}) {
        out << std::left << std::setw(8) << kSpectrumNames[k] << std::right
            << std::setw(10) << format_double(omega) << std::setw(14)
            << sci(closed.values[k]) << std::setw(14) << sci(v2.values[k])
            << std::setw(14) << sci(v1.values[k]) << "\n";
      }
    }
    const double q_limit_v2 = 1.0 - 1.0 / (sigma * sigma);
    const double q_limit_v1 = 1.0 - 1.0 / sigma;
    out << "S_q low-frequency limit: closed form " << sci(q_limit_v2)
        << " (= 1 - 1/sigma^2), v=1 solver trend " << sci(q_limit_v1)
        << " (= 1 - 1/sigma)\n\n";
  }

  // operating-point checks on the full round-trip matrix
  bool cavity_ok = true;
  {
    double worst_vec = 0.0;
    for (double kappa : {1e-4, 1e-3, 1e-2}) {
      for (double eps : {1e-4, 1e-3, 1e-2}) {
        const ReducedParams p =
            ReducedParams::working_point(kappa, 1e-3, eps, 1.0);
        const Matrix4c m =
            round_trip_reduced(p, threshold_pump_amplitude(kappa, p.g));
        Vector4c v;
        v << Complex(1, 0), Complex(1, 0), Complex(0, -1), Complex(0, -1);
        worst_vec = std::max(worst_vec,
                             ((m * v - v).cwiseAbs().maxCoeff()));
      }
    }
    const bool vec_ok = worst_vec < 1e-12;
    cavity_ok = cavity_ok && vec_ok;
    out << "threshold eigenvector residual : " << sci(worst_vec) << "  "
        << (vec_ok ? "ok" : "FAIL") << "\n";

    const double kappa = cfg.cavity.kappa, g = cfg.cavity.g;
    const double eps = cfg.cavity.epsilon0;
    const ThresholdBranches branches =
        threshold_branches(eps, eps, kappa, g);
    const double expected = 2.0 * kappa * kappa / (g * g);
    const double thr_err =
        std::abs(branches.lower - expected) / expected;
    const bool thr_ok = thr_err < 1e-12;
    cavity_ok = cavity_ok && thr_ok;
    out << "lowest threshold identity      : " << sci(thr_err) << "  "
        << (thr_ok ? "ok" : "FAIL") << "\n";

    const ReducedParams wp =
        ReducedParams::working_point(1e-3, 1e-3, 1e-3, 1.0);
    const double res =
        stationarity_residual(wp, threshold_pump_amplitude(1e-3, 1e-3));
    const bool res_ok = res <= 1e-9;
    cavity_ok = cavity_ok && res_ok;
    out << "working point stationarity     : " << sci(res) << "  "
        << (res_ok ? "ok" : "FAIL") << "\n\n";
  }

  const bool strict = report.has_strict_failure() || !cavity_ok;
  const bool documented = report.has_documented_deviation();
  if (strict) {
    out << "RESULT: FAIL (unexplained mismatch)\n";
    return 2;
  }
  if (documented) {
    out << "RESULT: PASS with documented deviations\n";
    return 3;
  }
  out << "RESULT: PASS\n";
  return 0;
}

}  // namespace tcopo
