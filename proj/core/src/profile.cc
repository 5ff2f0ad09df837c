// Copyright 2026 The iasolve Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "iasolve/profile.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

namespace iasolve {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTauMax = 6.0;
constexpr int kTauSteps = 60;

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 160.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 50.0;

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

double PlotX(double tau) { return kLeft + (kWidth - kLeft - kRight) * tau / kTauMax; }
double PlotY(double p) { return kTop + (kHeight - kTop - kBottom) * (1.0 - p); }

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<double> ProfileTauGrid() {
  std::vector<double> grid;
  for (int k = 0; k <= kTauSteps; ++k) grid.push_back(k / 10.0);
  return grid;
}

std::vector<std::string> SolverIds(const std::vector<BenchRecord>& records) {
  std::vector<std::string> ids;
  for (const BenchRecord& r : records) {
    if (std::find(ids.begin(), ids.end(), r.solver) == ids.end()) ids.push_back(r.solver);
  }
  return ids;
}

std::map<std::string, std::map<std::string, double>> PerformanceRatios(
    const std::vector<BenchRecord>& records, const std::vector<std::string>& solvers) {
  if (solvers.size() < 2) throw std::invalid_argument("profiles need at least 2 solvers");
  std::set<std::string> wanted(solvers.begin(), solvers.end());
  std::map<std::string, std::map<std::string, double>> times;
  std::string problems;
  for (const BenchRecord& r : records) {
    if (!wanted.count(r.solver)) continue;
    auto& row = times[r.instance];
    if (row.count(r.solver)) problems += " repeated (" + r.instance + ", " + r.solver + ")";
    row[r.solver] = r.solved() ? r.time_s : kInf;
  }
  for (const auto& [instance, row] : times) {
    for (const std::string& s : solvers) {
      if (!row.count(s)) problems += " missing (" + instance + ", " + s + ")";
    }
  }
  if (!problems.empty()) throw std::invalid_argument("incomplete records:" + problems);

  std::map<std::string, std::map<std::string, double>> ratios;
  for (const auto& [instance, row] : times) {
    double best = kInf;
    for (const auto& [s, t] : row) best = std::min(best, t);
    for (const auto& [s, t] : row) {
      double r;
      if (std::isinf(best) || std::isinf(t)) {
        r = kInf;
      } else if (best == 0.0) {
        r = t == 0.0 ? 1.0 : kInf;
      } else {
        r = t / best;
      }
      ratios[instance][s] = r;
    }
  }
  return ratios;
}

std::vector<ProfileCurve> PerformanceProfile(const std::vector<BenchRecord>& records,
                                             const std::vector<std::string>& solvers) {
  auto ratios = PerformanceRatios(records, solvers);
  const double count = static_cast<double>(ratios.size());
  std::vector<ProfileCurve> curves;
  for (const std::string& s : solvers) {
    ProfileCurve c;
    c.solver = s;
    for (double tau : ProfileTauGrid()) {
      const double threshold = std::exp2(tau);
      int hits = 0;
      for (const auto& [instance, row] : ratios) hits += row.at(s) <= threshold;
      c.points.emplace_back(tau, count == 0.0 ? 0.0 : hits / count);
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

void EmitSvg(const std::vector<ProfileCurve>& curves, std::ostream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double x0 = PlotX(0.0);
  const double x1 = PlotX(kTauMax);
  const double y0 = PlotY(0.0);
  const double y1 = PlotY(1.0);
  out << "<g stroke=\"black\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
      << "\"/>\n";
  out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
      << "\"/>\n";
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= static_cast<int>(kTauMax); ++k) {
    double x = PlotX(k);
    out << "<line x1=\"" << x << "\" y1=\"" << y0 << "\" x2=\"" << x << "\" y2=\"" << y0 + 4
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << y0 + 16 << "\" text-anchor=\"middle\">" << k
        << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    double p = k / 4.0;
    double y = PlotY(p);
    out << "<line x1=\"" << x0 - 4 << "\" y1=\"" << y << "\" x2=\"" << x0 << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x0 - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << p
        << "</text>\n";
  }
  out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">tau</text>\n";
  out << "<text x=\"16\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (y0 + y1) / 2 << ")\">p_s(tau)</text>\n";
  out << "</g>\n";
  for (size_t i = 0; i < curves.size(); ++i) {
    const ProfileCurve& c = curves[i];
    const char* color = kColors[i % std::size(kColors)];
    out << "<polyline class=\"profile\" data-solver=\"" << Escape(c.solver)
        << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (size_t k = 0; k < c.points.size(); ++k) {
      const auto& [tau, p] = c.points[k];
      if (k > 0) out << " " << PlotX(tau) << "," << PlotY(c.points[k - 1].second) << " ";
      out << PlotX(tau) << "," << PlotY(p);
    }
    out << "\"/>\n";
    double ly = kTop + 16.0 * (i + 1);
    double lx = kWidth - kRight + 16.0;
    out << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 20 << "\" y2=\""
        << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 26 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << Escape(c.solver) << "</text>\n";
  }
  out << "</svg>\n";
}

void EmitSvg(const std::vector<ProfileCurve>& curves, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  EmitSvg(curves, out);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace iasolve
