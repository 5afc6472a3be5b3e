/* Copyright 2026 The phonkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#include "commands.hpp"
#include "common.hpp"
#include "phonkit/analysis/sigmoid.hpp"
#include "phonkit/analysis/support.hpp"
#include "phonkit/core/csv.hpp"
#include "phonkit/ipa/inventory.hpp"
#include "phonkit/ipa/phoneme.hpp"

namespace phonkit::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kCurvePoints = 200;
constexpr double kCurveMargin = 0.2;

std::size_t parse_count(const std::string& s, const std::string& what, std::size_t line) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw ParseError("bad " + what + " '" + s + "'", line);
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& s, const std::string& what, std::size_t line) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || !std::isfinite(v)) {
    throw ParseError("bad " + what + " '" + s + "'", line);
  }
  return v;
}

std::vector<analysis::FreqF1Point> read_points(const std::string& path,
                                               const ipa::PhonemeInventory* inv) {
  auto rows = csv::parse(io::read_file(path));
  if (rows.empty()) throw ParseError(path + ": empty phoneme table", 1);
  std::map<std::string, std::size_t> col;
  for (std::size_t c = 0; c < rows[0].size(); ++c) col[rows[0][c]] = c;
  for (const char* need : {"surface", "f1", "train_freq", "test_freq"}) {
    if (!col.count(need)) throw ParseError(path + ": missing column '" + need + "'", 1);
  }
  std::vector<analysis::FreqF1Point> points;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != rows[0].size()) throw ParseError(path + ": wrong number of fields", r + 1);
    analysis::FreqF1Point p;
    p.surface = row[col["surface"]];
    p.f1 = parse_real(row[col["f1"]], "f1", r + 1);
    p.train_freq = parse_count(row[col["train_freq"]], "train_freq", r + 1);
    p.test_freq = parse_count(row[col["test_freq"]], "test_freq", r + 1);
    std::optional<std::size_t> idx = inv ? inv->match(p.surface) : std::nullopt;
    p.base = idx ? inv->phoneme(*idx).base : ipa::decompose(p.surface, ipa::default_diacritics()).base;
    points.push_back(std::move(p));
  }
  return points;
}

double point_size(const analysis::FreqF1Point& p) {
  return std::log10(static_cast<double>(p.test_freq) + 1.0);
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_plot(const std::vector<const analysis::FreqF1Point*>& used,
                     const std::vector<analysis::BandPoint>& curve) {
  const double W = 640, H = 420, pad = 50;
  double lo = curve.front().x, hi = curve.back().x;
  auto sx = [&](double x) { return pad + (x - lo) / (hi - lo) * (W - 2 * pad); };
  auto sy = [&](double y) { return H - pad - std::clamp(y, 0.0, 1.05) / 1.05 * (H - 2 * pad); };
  std::string s;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", W, H);
  s += buf;
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                pad, H - pad, W - pad, H - pad, pad, pad, pad, H - pad);
  s += buf;
  std::string band = "<polygon fill=\"#1f77b4\" fill-opacity=\"0.2\" points=\"";
  for (const auto& b : curve) {
    std::snprintf(buf, sizeof buf, "%.1f,%.1f ", sx(b.x), sy(b.upper));
    band += buf;
  }
  for (auto it = curve.rbegin(); it != curve.rend(); ++it) {
    std::snprintf(buf, sizeof buf, "%.1f,%.1f ", sx(it->x), sy(it->lower));
    band += buf;
  }
  s += band + "\"/>\n<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (const auto& b : curve) {
    std::snprintf(buf, sizeof buf, "%.1f,%.1f ", sx(b.x), sy(b.f));
    s += buf;
  }
  s += "\"/>\n";
  for (const auto* p : used) {
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"%.1f\" fill=\"#d62728\" fill-opacity=\"0.6\">"
                  "<title>",
                  sx(*p->x()), sy(p->f1), 2.0 + 3.0 * point_size(*p));
    s += buf + xml_escape(p->surface) + "</title></circle>\n";
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">log10 train frequency</text>\n"
                "<text x=\"15\" y=\"%.1f\" transform=\"rotate(-90 15 %.1f)\" "
                "text-anchor=\"middle\">F1</text>\n",
                W / 2, H - 12, H / 2, H / 2);
  s += buf;
  s += "</svg>\n";
  return s;
}

}  // namespace

int run_analyze(const AnalyzeOptions& o) {
  std::optional<ipa::PhonemeInventory> inv;
  if (!o.inventory.empty()) inv = ipa::PhonemeInventory::load(o.inventory);
  auto points = read_points(o.phonemes, inv ? &*inv : nullptr);
  fs::create_directories(o.out_dir);
  const fs::path dir(o.out_dir);

  auto in = analysis::fit_input(points, o.weight_by_test_freq);
  analysis::SigmoidFit fit;
  try {
    fit = analysis::fit_sigmoid(in.xs, in.ys, in.weights);
  } catch (const InsufficientPoints& e) {
    throw InsufficientPoints(std::string(e.what()) +
                             "; the fit uses phonemes with train_freq >= 1 and test_freq >= 1");
  }

  auto se = [&](int i) { return fit.covariance_valid ? csv::number(fit.standard_error(i)) : "nan"; };
  io::write_file(dir / "fit.csv",
                 csv::format({{"L", "k", "x0", "se_L", "se_k", "se_x0", "r2", "n_points", "converged"},
                              {csv::number(fit.params.L), csv::number(fit.params.k),
                               csv::number(fit.params.x0), se(0), se(1), se(2),
                               fit.r2 ? csv::number(*fit.r2) : "nan", std::to_string(fit.n_points),
                               fit.converged ? "true" : "false"}}));

  auto [lo, hi] = std::minmax_element(in.xs.begin(), in.xs.end());
  auto grid = analysis::linear_grid(*lo - kCurveMargin, *hi + kCurveMargin, kCurvePoints);
  std::vector<analysis::BandPoint> curve;
  if (fit.covariance_valid) {
    curve = analysis::confidence_band(fit, grid);
  } else {
    note("covariance is singular; the curve is written without a confidence band");
    for (double x : grid) {
      double f = fit(x);
      curve.push_back({x, f, NAN, NAN});
    }
  }
  std::vector<csv::Row> rows{{"x", "f", "ci_lo", "ci_hi"}};
  for (const auto& b : curve) {
    rows.push_back({csv::number(b.x), csv::number(b.f), csv::number(b.lower), csv::number(b.upper)});
  }
  io::write_file(dir / "curve.csv", csv::format(rows));

  rows = {{"surface", "x", "f1", "point_size"}};
  for (const auto* p : in.used) {
    rows.push_back({p->surface, csv::number(*p->x()), csv::number(p->f1), csv::number(point_size(*p))});
  }
  io::write_file(dir / "points.csv", csv::format(rows));

  rows = {{"surface", "f1", "test_freq"}};
  for (const auto* p : in.zero_train) {
    rows.push_back({p->surface, csv::number(p->f1), std::to_string(p->test_freq)});
  }
  io::write_file(dir / "zero_train.csv", csv::format(rows));

  double low = o.low_cutoff > 0 ? o.low_cutoff : analysis::kLowSupport;
  double high = o.high_cutoff > 0 ? o.high_cutoff : analysis::kHighSupport;
  auto report = analysis::match_low_support(points, low, high);
  rows = {{"low", "low_train_freq", "low_f1", "high", "high_train_freq", "high_f1"}};
  for (const auto& m : report.matched) {
    rows.push_back({m.low->surface, std::to_string(m.low->train_freq), csv::number(m.low->f1),
                    m.high->surface, std::to_string(m.high->train_freq), csv::number(m.high->f1)});
  }
  for (const auto* p : report.unmatched) {
    rows.push_back({p->surface, std::to_string(p->train_freq), csv::number(p->f1), "", "", ""});
  }
  rows.push_back({"spearman", report.spearman ? csv::number(*report.spearman) : "nan", "", "", "", ""});
  io::write_file(dir / "low_support.csv", csv::format(rows));

  if (!o.svg.empty()) io::write_file(o.svg, svg_plot(in.used, curve));

  std::printf("fit over %zu phonemes: L=%.4f k=%.4f x0=%.4f R2=%s%s\n", fit.n_points, fit.params.L,
              fit.params.k, fit.params.x0, fit.r2 ? csv::number(*fit.r2).c_str() : "nan",
              fit.converged ? "" : " (not converged)");
  std::printf("low-support pairs: %zu matched, %zu unmatched, spearman=%s\n", report.matched.size(),
              report.unmatched.size(),
              report.spearman ? csv::number(*report.spearman).c_str() : "nan");
  if (!in.zero_train.empty()) {
    std::printf("%zu phonemes absent from training data listed in zero_train.csv\n",
                in.zero_train.size());
  }
  return 0;
}

}  // namespace phonkit::cli
