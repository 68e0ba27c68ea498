#pragma once

#include <string>
#include <vector>

#include "tcopo/config.hpp"

namespace tcopo {

// One evaluated grid point. Field order matches the CSV column order.
struct SweepRow {
  double omega = 0.0;
  double c = 0.0;
  double sigma = 1.0;
  double s_p = 1.0;
  double s_q = 1.0;
  double s_r = 1.0;
  double s_s = 1.0;
  double s_s1p = 1.0;
  double s_s2m = 1.0;
  double sum_crit = 1.0;
  double prod_crit = 1.0;
  double epr_crit = 1.0;
};

// Cartesian product sigma x c x omega, ordered exactly that way with omega
// ascending. Rows are identical for any thread count; numeric failures carry
// the offending grid point in the message.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, int threads = 1);

inline constexpr const char* kCsvHeader =
    "omega,c,sigma,S_p,S_q,S_r,S_s,S_S1p,S_S2m,sum_crit,prod_crit,epr_crit";

// Shortest round-trip decimal for every value: emission is byte-deterministic.
std::string csv_string(const std::vector<SweepRow>& rows);

std::string format_double(double value);

// Plottable columns by CSV name.
const std::vector<std::string>& plot_columns();
double column_value(const SweepRow& row, const std::string& column);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "omega";
  std::string y_label;
  bool log_x = true;
  int width = 860;
  int height = 540;
};

// Self-contained SVG line plot, one polyline per series.
std::string svg_line_plot(const std::vector<PlotSeries>& series,
                          const PlotOptions& opt);

// One curve per (sigma, c) group present in the rows.
std::string svg_for_column(const std::vector<SweepRow>& rows,
                           const std::string& column, bool log_x = true);

void write_text_file(const std::string& path, const std::string& content);

struct FigureFiles {
  std::vector<std::string> paths;
};

// Reproduces the two reference plots: id 2 is the amplitude-difference and
// phase-sum spectra for sigma in {1, 1.1} and c in {1, 0.2, 0}; id 3 the
// three entanglement criteria at sigma = 1 for c in {0, 1} (the product
// curve is plotted as half the product). Emits CSV plus SVG.
FigureFiles make_figure(int id, const RunConfig& cfg);

}  // namespace tcopo
