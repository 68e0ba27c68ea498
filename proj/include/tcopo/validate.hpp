#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tcopo/config.hpp"
#include "tcopo/noise.hpp"

namespace tcopo {

// Aggregated agreement between the matrix-valued solver and the closed-form
// spectra, per spectrum and parameter regime.
struct RegimeStat {
  std::string spectrum;
  std::string regime;
  int points = 0;
  double max_rel_err = 0.0;
  bool documented = false;  // deviations here are expected and recorded
};

struct SpectrumMismatch {
  std::string spectrum;
  double omega = 0.0;
  double sigma = 1.0;
  double c = 0.0;
  double numeric = 0.0;
  double analytic = 0.0;
  double rel_err = 0.0;
  bool documented = false;
};

struct ValidationReport {
  double pump_variance = 2.0;
  double tolerance = 1e-9;
  std::vector<RegimeStat> stats;
  std::vector<SpectrumMismatch> mismatches;

  bool has_strict_failure() const;
  bool has_documented_deviation() const;
};

// Compares all six spectra on the Cartesian grid. Deviations of the
// pump-carrying spectra above threshold are expected whenever the pump
// variance differs from its physical value of 2; those are flagged as
// documented rather than failures.
ValidationReport validate_spectra(const SweepGrid& grid, double pump_variance,
                                  double tolerance = 1e-9);

// Writes the full text report (agreement table, pump-variance
// reconciliation, operating-point checks). Returns the process exit code:
// 0 all strict, 3 documented deviations only, 2 unexplained mismatch.
int run_validation(const RunConfig& cfg, std::ostream& out);

}  // namespace tcopo
