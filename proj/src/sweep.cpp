#include "tcopo/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "tcopo/noise.hpp"
#include "tcopo/polarization.hpp"

namespace tcopo {
namespace {

SweepRow evaluate_point(double omega, double sigma, double c,
                        double pump_variance) {
  const SpectralMatrix sm = spectral_matrix(omega, sigma, c, pump_variance);
  const CombinationSet combos = alpha_combinations();
  const StokesSpectra stokes = stokes_fluctuation_spectra(sm);

  SweepRow row;
  row.omega = omega;
  row.c = c;
  row.sigma = sigma;
  row.s_p = combination_spectrum(sm, combos.p);
  row.s_q = combination_spectrum(sm, combos.q);
  row.s_r = combination_spectrum(sm, combos.r);
  row.s_s = combination_spectrum(sm, combos.s);
  row.s_s1p = stokes.s1_plus;
  row.s_s2m = stokes.s2_minus;
  row.sum_crit = sum_criterion(stokes.s1_plus, stokes.s2_minus).value;
  row.prod_crit = product_criterion(stokes.s1_plus, stokes.s2_minus).value;
  row.epr_crit = epr_criterion(stokes).value;

  const double fields[] = {row.s_p,   row.s_q,      row.s_r,
                           row.s_s,   row.s_s1p,    row.s_s2m,
                           row.sum_crit, row.prod_crit, row.epr_crit};
  for (double f : fields) {
    if (!std::isfinite(f)) {
      throw std::runtime_error("non-finite spectrum value");
    }
  }
  return row;
}

std::string point_context(double omega, double sigma, double c) {
  return " (omega=" + format_double(omega) + ", sigma=" + format_double(sigma) +
         ", c=" + format_double(c) + ")";
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string format_fixed2(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value,
                           std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg, int threads) {
  validate_config(cfg);
  const std::vector<double> sigmas = cfg.resolved_sigmas();
  const std::vector<double> couplings = cfg.resolved_couplings();
  for (double s : sigmas) {
    if (s < 1.0) {
      throw ConfigError("sweep requires sigma >= 1, got " + format_double(s));
    }
  }

  const std::size_t n_omega = static_cast<std::size_t>(cfg.sweep.omega_points);
  const std::vector<double> omegas =
      cfg.sweep.spacing == Spacing::log
          ? log_spaced(cfg.sweep.omega_min, cfg.sweep.omega_max, n_omega)
          : lin_spaced(cfg.sweep.omega_min, cfg.sweep.omega_max, n_omega);

  const std::size_t total = sigmas.size() * couplings.size() * n_omega;
  std::vector<SweepRow> rows(total);

  struct Failure {
    std::size_t index;
    std::exception_ptr error;
  };

  auto compute_range = [&](std::size_t begin, std::size_t end,
                           Failure& failure) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t oi = idx % n_omega;
      const std::size_t ci = (idx / n_omega) % couplings.size();
      const std::size_t si = idx / (n_omega * couplings.size());
      const double omega = omegas[oi];
      const double sigma = sigmas[si];
      const double c = couplings[ci];
      try {
        rows[idx] = evaluate_point(omega, sigma, c, cfg.noise.pump_variance);
      } catch (const std::exception& e) {
        if (!failure.error || idx < failure.index) {
          failure.index = idx;
          failure.error = std::make_exception_ptr(std::runtime_error(
              std::string(e.what()) + point_context(omega, sigma, c)));
        }
        return;
      }
    }
  };

  const int worker_count = std::clamp<int>(
      threads, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
  if (worker_count <= 1) {
    Failure failure{total, nullptr};
    compute_range(0, total, failure);
    if (failure.error) std::rethrow_exception(failure.error);
    return rows;
  }

  std::vector<Failure> failures(static_cast<std::size_t>(worker_count),
                                Failure{total, nullptr});
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(worker_count));
  const std::size_t chunk =
      (total + static_cast<std::size_t>(worker_count) - 1) /
      static_cast<std::size_t>(worker_count);
  for (int w = 0; w < worker_count; ++w) {
    const std::size_t begin =
        std::min(total, static_cast<std::size_t>(w) * chunk);
    const std::size_t end = std::min(total, begin + chunk);
    pool.emplace_back(compute_range, begin, end,
                      std::ref(failures[static_cast<std::size_t>(w)]));
  }
  for (auto& t : pool) t.join();

  const Failure* first = nullptr;
  for (const Failure& f : failures) {
    if (f.error && (!first || f.index < first->index)) first = &f;
  }
  if (first) std::rethrow_exception(first->error);
  return rows;
}

std::string csv_string(const std::vector<SweepRow>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("csv emission requires at least one row");
  }
  std::string out(kCsvHeader);
  out += '\n';
  for (const SweepRow& r : rows) {
    const double values[] = {r.omega,  r.c,       r.sigma,    r.s_p,
                             r.s_q,    r.s_r,     r.s_s,      r.s_s1p,
                             r.s_s2m,  r.sum_crit, r.prod_crit, r.epr_crit};
    bool leading = true;
    for (double v : values) {
      if (!leading) out += ',';
      out += format_double(v);
      leading = false;
    }
    out += '\n';
  }
  return out;
}

const std::vector<std::string>& plot_columns() {
  static const std::vector<std::string> names = {
      "S_p",   "S_q",   "S_r",      "S_s",       "S_S1p",
      "S_S2m", "sum_crit", "prod_crit", "epr_crit"};
  return names;
}

double column_value(const SweepRow& row, const std::string& column) {
  if (column == "S_p") return row.s_p;
  if (column == "S_q") return row.s_q;
  if (column == "S_r") return row.s_r;
  if (column == "S_s") return row.s_s;
  if (column == "S_S1p") return row.s_s1p;
  if (column == "S_S2m") return row.s_s2m;
  if (column == "sum_crit") return row.sum_crit;
  if (column == "prod_crit") return row.prod_crit;
  if (column == "epr_crit") return row.epr_crit;
  std::string allowed;
  for (const std::string& name : plot_columns()) {
    if (!allowed.empty()) allowed += ", ";
    allowed += name;
  }
  throw std::invalid_argument("unknown column '" + column +
                              "', expected one of: " + allowed);
}

std::string svg_line_plot(const std::vector<PlotSeries>& series,
                          const PlotOptions& opt) {
  if (series.empty()) {
    throw std::invalid_argument("svg plot requires at least one series");
  }
  for (const PlotSeries& s : series) {
    if (s.x.empty() || s.x.size() != s.y.size()) {
      throw std::invalid_argument("svg series '" + s.label +
                                  "' needs matching nonempty x and y");
    }
    if (opt.log_x) {
      for (double x : s.x) {
        if (x <= 0.0) {
          throw std::invalid_argument(
              "log-x plot requires strictly positive x values");
        }
      }
    }
  }

  double x_min = series[0].x.front(), x_max = x_min;
  double y_min = series[0].y.front(), y_max = y_min;
  for (const PlotSeries& s : series) {
    for (double x : s.x) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
    }
    for (double y : s.y) {
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (x_min == x_max) {
    x_min = opt.log_x ? x_min * 0.5 : x_min - 0.5;
    x_max = opt.log_x ? x_max * 2.0 : x_max + 0.5;
  }
  double y_pad = 0.05 * (y_max - y_min);
  if (y_pad == 0.0) y_pad = 0.5;
  y_min -= y_pad;
  y_max += y_pad;

  const double ml = 70.0, mr = 20.0, mt = 42.0, mb = 52.0;
  const double pw = opt.width - ml - mr;
  const double ph = opt.height - mt - mb;
  const double lx_min = opt.log_x ? std::log10(x_min) : x_min;
  const double lx_max = opt.log_x ? std::log10(x_max) : x_max;

  auto px = [&](double x) {
    const double t = ((opt.log_x ? std::log10(x) : x) - lx_min) /
                     (lx_max - lx_min);
    return ml + t * pw;
  };
  auto py = [&](double y) {
    return mt + (1.0 - (y - y_min) / (y_max - y_min)) * ph;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(opt.width) + "\" height=\"" +
         std::to_string(opt.height) + "\" viewBox=\"0 0 " +
         std::to_string(opt.width) + " " + std::to_string(opt.height) +
         "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"" + format_fixed2(ml + pw / 2) +
         "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
         "text-anchor=\"middle\">" +
         xml_escape(opt.title) + "</text>\n";

  // x ticks: decades when logarithmic, five even steps otherwise
  std::vector<double> x_ticks;
  if (opt.log_x) {
    const int d0 = static_cast<int>(std::ceil(lx_min - 1e-9));
    const int d1 = static_cast<int>(std::floor(lx_max + 1e-9));
    for (int d = d0; d <= d1; ++d) x_ticks.push_back(std::pow(10.0, d));
  } else {
    for (int i = 0; i <= 4; ++i) {
      x_ticks.push_back(x_min + (x_max - x_min) * i / 4.0);
    }
  }
  const double y_range = y_max - y_min;
  const double raw_step = y_range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
  const double norm = raw_step / mag;
  const double step =
      mag * (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0);
  std::vector<double> y_ticks;
  for (double y = std::ceil(y_min / step) * step; y <= y_max + 1e-12 * y_range;
       y += step) {
    y_ticks.push_back(y);
  }

  for (double x : x_ticks) {
    const std::string gx = format_fixed2(px(x));
    svg += "<line x1=\"" + gx + "\" y1=\"" + format_fixed2(mt) + "\" x2=\"" +
           gx + "\" y2=\"" + format_fixed2(mt + ph) +
           "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + gx + "\" y=\"" + format_fixed2(mt + ph + 18) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"middle\">" +
           format_double(x) + "</text>\n";
  }
  for (double y : y_ticks) {
    const std::string gy = format_fixed2(py(y));
    svg += "<line x1=\"" + format_fixed2(ml) + "\" y1=\"" + gy + "\" x2=\"" +
           format_fixed2(ml + pw) + "\" y2=\"" + gy +
           "\" stroke=\"#dddddd\"/>\n";
    const double rounded = std::round(y / step) * step;
    svg += "<text x=\"" + format_fixed2(ml - 8) + "\" y=\"" +
           format_fixed2(py(y) + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"end\">" +
           format_double(rounded) + "</text>\n";
  }
  svg += "<rect x=\"" + format_fixed2(ml) + "\" y=\"" + format_fixed2(mt) +
         "\" width=\"" + format_fixed2(pw) + "\" height=\"" +
         format_fixed2(ph) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
  svg += "<text x=\"" + format_fixed2(ml + pw / 2) + "\" y=\"" +
         format_fixed2(static_cast<double>(opt.height) - 14) +
         "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\">" +
         xml_escape(opt.x_label) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + format_fixed2(mt + ph / 2) +
         "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         format_fixed2(mt + ph / 2) + ")\">" +
         xml_escape(opt.y_label) + "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % kPaletteSize];
    std::string points;
    for (std::size_t k = 0; k < series[i].x.size(); ++k) {
      if (!points.empty()) points += ' ';
      points += format_fixed2(px(series[i].x[k])) + "," +
                format_fixed2(py(series[i].y[k]));
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
  }

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % kPaletteSize];
    const double ly = mt + 14 + 16.0 * static_cast<double>(i);
    svg += "<line x1=\"" + format_fixed2(ml + 10) + "\" y1=\"" +
           format_fixed2(ly - 4) + "\" x2=\"" + format_fixed2(ml + 34) +
           "\" y2=\"" + format_fixed2(ly - 4) + "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + format_fixed2(ml + 40) + "\" y=\"" +
           format_fixed2(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           xml_escape(series[i].label) + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

namespace {

std::vector<PlotSeries> series_for_column(const std::vector<SweepRow>& rows,
                                          const std::string& column,
                                          const std::string& label_prefix) {
  std::vector<PlotSeries> series;
  std::map<std::pair<double, double>, std::size_t> group_index;
  for (const SweepRow& row : rows) {
    const auto key = std::make_pair(row.sigma, row.c);
    auto it = group_index.find(key);
    if (it == group_index.end()) {
      it = group_index.emplace(key, series.size()).first;
      PlotSeries s;
      s.label = label_prefix + " sigma=" + format_double(row.sigma) +
                " c=" + format_double(row.c);
      series.push_back(std::move(s));
    }
    series[it->second].x.push_back(row.omega);
    series[it->second].y.push_back(column_value(row, column));
  }
  return series;
}

}  // namespace

std::string svg_for_column(const std::vector<SweepRow>& rows,
                           const std::string& column, bool log_x) {
  if (rows.empty()) {
    throw std::invalid_argument("svg emission requires at least one row");
  }
  PlotOptions opt;
  opt.title = column + " vs omega";
  opt.y_label = column;
  opt.log_x = log_x;
  return svg_line_plot(series_for_column(rows, column, column), opt);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

FigureFiles make_figure(int id, const RunConfig& cfg) {
  if (id != 2 && id != 3) {
    throw std::invalid_argument("figure id must be 2 or 3");
  }
  RunConfig fig_cfg = cfg;
  // curve sets are pinned; only the omega grid and pump variance follow cfg
  if (id == 2) {
    fig_cfg.sweep.sigma_list = {1.0, 1.1};
    fig_cfg.sweep.c_list = {1.0, 0.2, 0.0};
  } else {
    fig_cfg.sweep.sigma_list = {1.0};
    fig_cfg.sweep.c_list = {0.0, 1.0};
  }
  fig_cfg.drive.sigma = 1.0;
  fig_cfg.drive.pump_intensity.reset();

  const std::vector<SweepRow> rows = run_sweep(fig_cfg);
  const bool log_x = fig_cfg.sweep.spacing == Spacing::log;

  namespace fs = std::filesystem;
  const fs::path dir =
      cfg.output.path.empty() ? fs::path(".") : fs::path(cfg.output.path);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory: " +
                             dir.string());
  }

  FigureFiles files;
  const std::string stem = "figure" + std::to_string(id);
  const std::string csv_path = (dir / (stem + ".csv")).string();
  write_text_file(csv_path, csv_string(rows));
  files.paths.push_back(csv_path);

  std::vector<PlotSeries> series;
  PlotOptions opt;
  opt.log_x = log_x;
  if (id == 2) {
    for (const std::string& column : {std::string("S_r"), std::string("S_q")}) {
      auto part = series_for_column(rows, column, column);
      series.insert(series.end(), part.begin(), part.end());
    }
    opt.title = "amplitude-difference and phase-sum spectra";
    opt.y_label = "normalized spectrum";
  } else {
    for (const auto& [column, label] :
         {std::make_pair(std::string("sum_crit"), std::string("sum")),
          std::make_pair(std::string("epr_crit"), std::string("epr")),
          std::make_pair(std::string("prod_crit"), std::string("half product"))}) {
      auto part = series_for_column(rows, column, label);
      if (column == "prod_crit") {
        for (PlotSeries& s : part) {
          for (double& y : s.y) y *= 0.5;
        }
      }
      series.insert(series.end(), part.begin(), part.end());
    }
    opt.title = "entanglement criteria";
    opt.y_label = "criterion value";
  }

  const std::string svg_path = (dir / (stem + ".svg")).string();
  write_text_file(svg_path, svg_line_plot(series, opt));
  files.paths.push_back(svg_path);
  return files;
}

}  // namespace tcopo
