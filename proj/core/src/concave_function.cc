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

#include "iasolve/concave_function.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace iasolve {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kTabulatedSlack = 1e-12;

bool IsIntegral(double v) { return std::floor(v) == v; }

// Index of the segment [points[i], points[i+1]] holding t.
size_t TabulatedSegment(const Tabulated& tab, double t) {
  const auto& pts = tab.points;
  auto it = std::upper_bound(
      pts.begin(), pts.end(), t,
      [](double v, const std::pair<double, double>& p) { return v < p.first; });
  size_t idx = it == pts.begin() ? 0 : static_cast<size_t>(it - pts.begin()) - 1;
  return std::min(idx, pts.size() - 2);
}

}  // namespace

ConcaveFunction::ConcaveFunction(FamilyParams params)
    : params_(std::move(params)) {
  if (auto* tab = std::get_if<Tabulated>(&params_)) {
    std::sort(tab->points.begin(), tab->points.end());
  }
}

std::string_view ConcaveFunction::family_name() const {
  return std::visit(
      Overloaded{[](const Poly4&) { return std::string_view("poly4"); },
                 [](const LogLinear&) { return std::string_view("log_linear"); },
                 [](const SqrtScaled&) { return std::string_view("sqrt_scaled"); },
                 [](const PowerScaled&) { return std::string_view("power_scaled"); },
                 [](const Tabulated&) { return std::string_view("tabulated"); }},
      params_);
}

bool ConcaveFunction::Evaluable(double t) const {
  if (!std::isfinite(t)) return false;
  return std::visit(
      Overloaded{
          [](const Poly4&) { return true; },
          [t](const LogLinear& p) { return p.c == 0.0 || t > 0.0; },
          [t](const SqrtScaled&) { return t >= 0.0; },
          [t](const PowerScaled& p) {
            if (IsIntegral(p.p) && p.p >= 0.0) return true;
            return p.p > 0.0 ? t >= 0.0 : t > 0.0;
          },
          [t](const Tabulated& tab) {
            if (tab.points.size() < 2) {
              return tab.points.size() == 1 &&
                     std::abs(t - tab.points.front().first) <= kTabulatedSlack;
            }
            return t >= tab.points.front().first - kTabulatedSlack &&
                   t <= tab.points.back().first + kTabulatedSlack;
          }},
      params_);
}

double ConcaveFunction::Value(double t) const {
  if (!Evaluable(t)) {
    throw std::domain_error(std::string(family_name()) +
                            " is not evaluable at " + std::to_string(t));
  }
  return std::visit(
      Overloaded{
          [t](const Poly4& p) { return (((p.c * t + p.d) * t + p.e) * t + p.h) * t; },
          [t](const LogLinear& p) {
            return (p.c == 0.0 ? 0.0 : p.c * std::log(t)) + p.d * t;
          },
          [t](const SqrtScaled& p) { return p.gamma * std::sqrt(t); },
          [t](const PowerScaled& p) { return p.a * std::pow(t, p.p); },
          [t](const Tabulated& tab) {
            if (tab.points.size() == 1) return tab.points.front().second;
            size_t i = TabulatedSegment(tab, t);
            const auto& [x0, y0] = tab.points[i];
            const auto& [x1, y1] = tab.points[i + 1];
            if (t <= x0) return y0;
            if (t >= x1) return y1;
            double w = (t - x0) / (x1 - x0);
            return (1.0 - w) * y0 + w * y1;
          }},
      params_);
}

std::optional<double> ConcaveFunction::Slope(double t) const {
  if (!Evaluable(t)) return std::nullopt;
  return std::visit(
      Overloaded{
          [t](const Poly4& p) -> std::optional<double> {
            return ((4.0 * p.c * t + 3.0 * p.d) * t + 2.0 * p.e) * t + p.h;
          },
          [t](const LogLinear& p) -> std::optional<double> {
            if (p.c == 0.0) return p.d;
            return p.c / t + p.d;
          },
          [t](const SqrtScaled& p) -> std::optional<double> {
            if (t <= 0.0) return std::nullopt;
            return p.gamma / (2.0 * std::sqrt(t));
          },
          [t](const PowerScaled& p) -> std::optional<double> {
            if (p.p == 0.0) return 0.0;
            if (t == 0.0 && p.p < 1.0) return std::nullopt;
            return p.a * p.p * std::pow(t, p.p - 1.0);
          },
          [t](const Tabulated& tab) -> std::optional<double> {
            if (tab.points.size() < 2) return 0.0;
            size_t i = TabulatedSegment(tab, t);
            const auto& [x0, y0] = tab.points[i];
            const auto& [x1, y1] = tab.points[i + 1];
            return (y1 - y0) / (x1 - x0);
          }},
      params_);
}

double ConcaveFunction::MaxOver(double lo, double hi) const {
  if (hi < lo) std::swap(lo, hi);
  if (const auto* tab = std::get_if<Tabulated>(&params_)) {
    double best = std::max(Value(lo), Value(hi));
    for (const auto& [x, y] : tab->points) {
      if (x > lo && x < hi) best = std::max(best, y);
    }
    return best;
  }
  // Golden-section search; a concave function is unimodal on an interval.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = Value(c);
  double fd = Value(d);
  for (int iter = 0; iter < 200 && b - a > 1e-14 * (1.0 + std::abs(a) + std::abs(b));
       ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = Value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = Value(d);
    }
  }
  return std::max({Value(lo), Value(hi), fc, fd, Value(0.5 * (a + b))});
}

bool operator==(const ConcaveFunction& a, const ConcaveFunction& b) {
  return a.params_ == b.params_;
}

}  // namespace iasolve
