/*
 * Copyright 2026 The genmom Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "genmom/io.hpp"

namespace genmom {

namespace {

std::string fmt10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt10(*v) : std::string(); }

std::vector<ExperimentRow> sorted_rows(std::vector<ExperimentRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.m != b.m ? a.m < b.m : a.n < b.n;
  });
  return rows;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("csv: bad number '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("csv: bad number '" + s + "'");
  return v;
}

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("csv: bad boolean '" + s + "'");
}

}  // namespace

std::string experiment_rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::string out(kExperimentCsvHeader);
  out += '\n';
  for (const auto& r : sorted_rows(rows)) {
    out += std::to_string(r.n) + ',' + std::to_string(r.m) + ',' + fmt10(r.true_moment) + ',' +
           fmt10(r.true_stderr) + ',' + fmt_opt(r.exact_moment) + ',' + fmt_opt(r.info_chi2) + ',' +
           fmt_opt(r.info_mi) + ',' + fmt_opt(r.bound_chi2) + ',' + fmt_opt(r.bound_mi) + ',' +
           fmt_opt(r.bound_expected) + ',' + (r.valid_strict ? "true" : "false") + ',' +
           (r.valid_relaxed ? "true" : "false") + '\n';
  }
  return out;
}

std::vector<ExperimentRow> experiment_rows_from_csv(std::string_view text) {
  std::vector<ExperimentRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kExperimentCsvHeader) throw std::invalid_argument("csv: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 12) throw std::invalid_argument("csv: expected 12 fields, got " + std::to_string(f.size()));
    ExperimentRow r;
    r.n = std::stoi(f[0]);
    r.m = std::stoi(f[1]);
    r.true_moment = parse_double(f[2]);
    r.true_stderr = parse_double(f[3]);
    r.exact_moment = parse_opt(f[4]);
    r.info_chi2 = parse_opt(f[5]);
    r.info_mi = parse_opt(f[6]);
    r.bound_chi2 = parse_opt(f[7]);
    r.bound_mi = parse_opt(f[8]);
    r.bound_expected = parse_opt(f[9]);
    r.valid_strict = parse_bool(f[10]);
    r.valid_relaxed = parse_bool(f[11]);
    rows.push_back(r);
  }
  return rows;
}

void emit_csv(const std::vector<ExperimentRow>& rows, const std::filesystem::path& path) {
  write_text_file(path, experiment_rows_to_csv(rows));
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kTop = 40.0;
constexpr double kPlotW = 500.0;
constexpr double kPlotH = 310.0;

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<int, double>> points;
};

std::string fmt4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string render_svg_plot(const std::vector<ExperimentRow>& rows, int m) {
  std::vector<ExperimentRow> mine;
  for (const auto& r : sorted_rows(rows)) {
    if (r.m == m) mine.push_back(r);
  }
  if (mine.empty()) throw std::invalid_argument("svg: no rows for m = " + std::to_string(m));

  Series truth{"true", "#1f77b4", {}};
  Series chi2{"chi2-bound", "#d62728", {}};
  Series mi{"mi-bound", "#2ca02c", {}};
  std::vector<std::pair<double, double>> whiskers;  // (lo, hi) per truth point
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  auto note = [&](double v) {
    if (v > 0.0 && std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  };
  for (const auto& r : mine) {
    if (r.true_moment > 0.0) {
      truth.points.emplace_back(r.n, r.true_moment);
      whiskers.emplace_back(r.true_moment - 2.0 * r.true_stderr, r.true_moment + 2.0 * r.true_stderr);
      note(r.true_moment);
      note(r.true_moment + 2.0 * r.true_stderr);
    }
    if (r.bound_chi2) {
      chi2.points.emplace_back(r.n, *r.bound_chi2);
      note(*r.bound_chi2);
    }
    if (m <= 2 && r.bound_mi) {
      mi.points.emplace_back(r.n, *r.bound_mi);
      note(*r.bound_mi);
    }
  }
  if (!(hi > 0.0)) {
    lo = 0.1;
    hi = 1.0;
  }
  double y_min = std::floor(std::log10(lo));
  double y_max = std::ceil(std::log10(hi));
  if (y_max <= y_min) y_max = y_min + 1.0;
  double x_min = mine.front().n;
  double x_max = mine.back().n;
  if (x_max <= x_min) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  auto px = [&](double n) { return kLeft + (n - x_min) / (x_max - x_min) * kPlotW; };
  auto py = [&](double v) { return kTop + (y_max - std::log10(v)) / (y_max - y_min) * kPlotH; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << "Generalization error moment m=" << m << "</text>\n"
      << "<g id=\"plot-area\" data-left=\"" << kLeft << "\" data-top=\"" << kTop << "\" data-width=\"" << kPlotW
      << "\" data-height=\"" << kPlotH << "\" data-x-min=\"" << x_min << "\" data-x-max=\"" << x_max
      << "\" data-log10-y-min=\"" << y_min << "\" data-log10-y-max=\"" << y_max << "\">\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kPlotW << "\" height=\"" << kPlotH
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double d = y_min; d <= y_max + 1e-9; d += 1.0) {
    const double y = kTop + (y_max - d) / (y_max - y_min) * kPlotH;
    svg << "<line class=\"grid\" x1=\"" << kLeft << "\" y1=\"" << fmt4(y) << "\" x2=\"" << kLeft + kPlotW
        << "\" y2=\"" << fmt4(y) << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt4(y + 4) << "\" text-anchor=\"end\" font-size=\"11\">1e"
        << static_cast<int>(d) << "</text>\n";
  }
  for (const auto& r : mine) {
    svg << "<text x=\"" << fmt4(px(r.n)) << "\" y=\"" << kTop + kPlotH + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">" << r.n << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kTop + kPlotH + 36
      << "\" text-anchor=\"middle\" font-size=\"12\">n</text>\n";

  const double bottom = kTop + kPlotH;
  for (std::size_t i = 0; i < truth.points.size(); ++i) {
    const double x = px(truth.points[i].first);
    const double y_hi = py(whiskers[i].second);
    const double y_lo = whiskers[i].first > 0.0 ? std::min(bottom, py(whiskers[i].first)) : bottom;
    svg << "<line class=\"errorbar\" x1=\"" << fmt4(x) << "\" y1=\"" << fmt4(y_lo) << "\" x2=\"" << fmt4(x)
        << "\" y2=\"" << fmt4(y_hi) << "\" stroke=\"" << truth.color << "\"/>\n";
  }

  int legend_row = 0;
  for (const Series* s : {&truth, &chi2, &mi}) {
    if (s->points.empty()) continue;
    svg << "<polyline class=\"series\" data-series=\"" << s->label << "\" fill=\"none\" stroke=\"" << s->color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s->points.size(); ++i) {
      svg << (i ? " " : "") << fmt4(px(s->points[i].first)) << ',' << fmt4(py(s->points[i].second));
    }
    svg << "\"/>\n";
    const double ly = kTop + 14 + 16 * legend_row++;
    svg << "<line x1=\"" << kLeft + kPlotW - 110 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + kPlotW - 90
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s->color << "\" stroke-width=\"2\"/>\n"
        << "<text class=\"legend\" x=\"" << kLeft + kPlotW - 85 << "\" y=\"" << ly << "\" font-size=\"11\">"
        << s->label << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::vector<std::filesystem::path> emit_svg_plots(const std::vector<ExperimentRow>& rows,
                                                  const std::filesystem::path& out_dir) {
  std::vector<int> orders;
  for (const auto& r : rows) orders.push_back(r.m);
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  std::vector<std::filesystem::path> paths;
  for (int m : orders) {
    auto path = out_dir / ("gen_moment_m" + std::to_string(m) + ".svg");
    write_text_file(path, render_svg_plot(rows, m));
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace genmom
