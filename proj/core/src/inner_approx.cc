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

#include "iasolve/inner_approx.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iasolve {
namespace {

constexpr int kSecantGrid = 256;
constexpr int kVerifyGrid = 1024;
constexpr double kPivotTol = 1e-11;
constexpr double kHullTol = 1e-9;

double Grid(double a, double b, int i, int count) {
  return i + 1 == count ? b : a + (b - a) * i / (count - 1);
}

// Max |secant slope| over all pairs of a uniform grid on [a, b].
double MaxSecant(const ConcaveFunction& fn, double a, double b, int count) {
  std::vector<double> t(count);
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    t[i] = Grid(a, b, i, count);
    v[i] = fn.Value(t[i]);
  }
  double best = 0.0;
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      if (t[j] > t[i]) best = std::max(best, std::abs(v[j] - v[i]) / (t[j] - t[i]));
    }
  }
  return best;
}

double MaxAdjacentSecant(const ConcaveFunction& fn, double a, double b, int count) {
  double best = 0.0;
  double prev_t = a;
  double prev_v = fn.Value(a);
  for (int i = 1; i < count; ++i) {
    double t = Grid(a, b, i, count);
    double v = fn.Value(t);
    if (t > prev_t) best = std::max(best, std::abs(v - prev_v) / (t - prev_t));
    prev_t = t;
    prev_v = v;
  }
  return best;
}

struct AxisLipschitz {
  double constant = 0.0;
  bool sampled = false;
  bool singular = false;
};

AxisLipschitz AxisConstant(const ConcaveFunction& fn, double lo, double hi,
                           double safety) {
  AxisLipschitz out;
  if (const auto* tab = std::get_if<Tabulated>(&fn.params())) {
    for (size_t i = 0; i + 1 < tab->points.size(); ++i) {
      const auto& [x0, y0] = tab->points[i];
      const auto& [x1, y1] = tab->points[i + 1];
      if (x1 <= lo || x0 >= hi || x1 == x0) continue;
      out.constant = std::max(out.constant, std::abs((y1 - y0) / (x1 - x0)));
    }
    return out;
  }
  std::optional<double> s_lo = fn.Slope(lo);
  std::optional<double> s_hi = fn.Slope(hi);
  bool finite = s_lo && s_hi && std::isfinite(*s_lo) && std::isfinite(*s_hi);
  if (finite) {
    out.constant = std::max(std::abs(*s_lo), std::abs(*s_hi));
    return out;
  }
  out.sampled = true;
  out.singular = true;
  if (!(hi > lo)) return out;
  double a = lo + 1e-9 * (hi - lo);
  double k = MaxSecant(fn, a, hi, kSecantGrid) * safety;
  double verify = MaxAdjacentSecant(fn, a, hi, kVerifyGrid);
  if (verify > k) k = verify * safety;
  out.constant = k;
  return out;
}

}  // namespace

std::string_view InitModeName(InitMode mode) {
  switch (mode) {
    case InitMode::kCorners:
      return "corners";
    case InitMode::kSimplex:
      return "simplex";
    case InitMode::kAuto:
      return "auto";
  }
  return "auto";
}

std::optional<InitMode> ParseInitMode(std::string_view name) {
  if (name == "corners") return InitMode::kCorners;
  if (name == "simplex") return InitMode::kSimplex;
  if (name == "auto") return InitMode::kAuto;
  return std::nullopt;
}

BreakpointSet::BreakpointSet(int term_index, ConcaveTerm term)
    : term_index_(term_index), term_(std::move(term)) {}

AddResult BreakpointSet::Add(std::span<const double> z, int iteration) {
  const int k = dimension();
  if (static_cast<int>(z.size()) != k) {
    throw std::invalid_argument("breakpoint dimension mismatch");
  }
  for (int j = 0; j < size(); ++j) {
    auto p = point(j);
    double dist = 0.0;
    for (int i = 0; i < k; ++i) dist = std::max(dist, std::abs(p[i] - z[i]));
    if (dist <= kDuplicateTolerance) return AddResult::kDuplicate;
  }
  double v = term_.Evaluate(z);
  points_.insert(points_.end(), z.begin(), z.end());
  values_.push_back(v);
  created_at_.push_back(iteration);
  return AddResult::kAdded;
}

std::optional<PhiHat> BreakpointSet::Evaluate(std::span<const double> x) const {
  if (size() == 0) return std::nullopt;
  if (dimension() != 1) return SolveWeightsLp(points_, values_, dimension(), x);

  // Upper concave hull of the sampled graph, then interpolate.
  std::vector<int> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [this](int a, int b) {
    return points_[a] != points_[b] ? points_[a] < points_[b] : values_[a] > values_[b];
  });
  const double t = x[0];
  const double lo = points_[order.front()];
  const double hi = points_[order.back()];
  const double slack = kHullTol * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  if (t < lo - slack || t > hi + slack) return std::nullopt;

  std::vector<int> hull;
  for (int idx : order) {
    if (!hull.empty() && points_[hull.back()] == points_[idx]) continue;
    while (hull.size() >= 2) {
      int a = hull[hull.size() - 2];
      int b = hull.back();
      // Drop b when it lies on or below the chord from a to idx.
      double cross = (points_[b] - points_[a]) * (values_[idx] - values_[a]) -
                     (values_[b] - values_[a]) * (points_[idx] - points_[a]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(idx);
  }

  PhiHat out;
  out.weights.assign(size(), 0.0);
  if (hull.size() == 1 || t <= points_[hull.front()]) {
    out.weights[hull.front()] = 1.0;
    out.value = values_[hull.front()];
    return out;
  }
  if (t >= points_[hull.back()]) {
    out.weights[hull.back()] = 1.0;
    out.value = values_[hull.back()];
    return out;
  }
  for (size_t s = 0; s + 1 < hull.size(); ++s) {
    int a = hull[s];
    int b = hull[s + 1];
    if (t > points_[b]) continue;
    double w_b = (t - points_[a]) / (points_[b] - points_[a]);
    if (w_b <= 0.0) {
      out.weights[a] = 1.0;
      out.value = values_[a];
    } else if (w_b >= 1.0) {
      out.weights[b] = 1.0;
      out.value = values_[b];
    } else {
      out.weights[a] = 1.0 - w_b;
      out.weights[b] = w_b;
      out.value = (1.0 - w_b) * values_[a] + w_b * values_[b];
    }
    return out;
  }
  return std::nullopt;
}

double BreakpointSet::MaxAdjacentSlope() const {
  if (dimension() != 1 || size() < 2) return 0.0;
  std::vector<int> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [this](int a, int b) { return points_[a] < points_[b]; });
  double best = 0.0;
  for (size_t s = 0; s + 1 < order.size(); ++s) {
    double dz = points_[order[s + 1]] - points_[order[s]];
    if (dz <= 0.0) continue;
    best = std::max(best, std::abs(values_[order[s + 1]] - values_[order[s]]) / dz);
  }
  return best;
}

std::pair<std::vector<double>, std::vector<double>> BreakpointSet::Extent() const {
  const int k = dimension();
  std::vector<double> lo(k, std::numeric_limits<double>::infinity());
  std::vector<double> hi(k, -std::numeric_limits<double>::infinity());
  for (int j = 0; j < size(); ++j) {
    auto p = point(j);
    for (int i = 0; i < k; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  return {lo, hi};
}

BreakpointSet InitialSet(int term_index, const ConcaveTerm& term,
                         std::span<const double> lower,
                         std::span<const double> upper, InitMode mode) {
  const int k = term.dimension();
  if (static_cast<int>(lower.size()) != k || static_cast<int>(upper.size()) != k) {
    throw std::invalid_argument("bounds do not match the term dimension");
  }
  for (int i = 0; i < k; ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i]) {
      throw std::invalid_argument("initial set needs finite, ordered bounds");
    }
  }
  if (mode == InitMode::kAuto) {
    mode = k <= kAutoCornerLimit ? InitMode::kCorners : InitMode::kSimplex;
  }
  BreakpointSet set(term_index, term);
  std::vector<double> z(k);
  if (mode == InitMode::kCorners) {
    const uint64_t count = uint64_t{1} << k;
    for (uint64_t mask = 0; mask < count; ++mask) {
      for (int i = 0; i < k; ++i) z[i] = (mask >> i) & 1 ? upper[i] : lower[i];
      set.Add(z, 0);
    }
  } else {
    std::copy(lower.begin(), lower.end(), z.begin());
    set.Add(z, 0);
    for (int axis = 0; axis < k; ++axis) {
      for (int i = 0; i < k; ++i) {
        double y = i == axis ? static_cast<double>(k) : 0.0;
        z[i] = y * (upper[i] - lower[i]) + lower[i];
      }
      set.Add(z, 0);
    }
  }
  return set;
}

std::optional<PhiHat> SolveWeightsLp(std::span<const double> points,
                                     std::span<const double> values, int dim,
                                     std::span<const double> x) {
  const int tau = static_cast<int>(values.size());
  const int m = dim + 1;
  const int cols = tau + m + 1;  // weights, artificials, rhs
  const int rhs = cols - 1;
  std::vector<double> tab(static_cast<size_t>(m) * cols, 0.0);
  auto at = [&](int r, int c) -> double& { return tab[static_cast<size_t>(r) * cols + c]; };
  double scale = 1.0;
  for (int j = 0; j < tau; ++j) {
    at(0, j) = 1.0;
    for (int i = 0; i < dim; ++i) {
      at(i + 1, j) = points[static_cast<size_t>(j) * dim + i];
      scale = std::max(scale, std::abs(at(i + 1, j)));
    }
  }
  at(0, rhs) = 1.0;
  for (int i = 0; i < dim; ++i) at(i + 1, rhs) = x[i];
  for (int r = 0; r < m; ++r) {
    if (at(r, rhs) < 0.0) {
      for (int c = 0; c < cols; ++c) at(r, c) = -at(r, c);
    }
    at(r, tau + r) = 1.0;
  }
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) basis[r] = tau + r;

  auto pivot = [&](int pr, int pc) {
    double p = at(pr, pc);
    for (int c = 0; c < cols; ++c) at(pr, c) /= p;
    for (int r = 0; r < m; ++r) {
      if (r == pr) continue;
      double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c < cols; ++c) at(r, c) -= f * at(pr, c);
    }
    basis[pr] = pc;
  };
  // Bland's rule simplex on the given cost vector over the allowed columns.
  auto run = [&](const std::vector<double>& cost, int allowed_cols) {
    for (int iter = 0; iter < 100000; ++iter) {
      int enter = -1;
      for (int c = 0; c < allowed_cols; ++c) {
        if (std::find(basis.begin(), basis.end(), c) != basis.end()) continue;
        double d = cost[c];
        for (int r = 0; r < m; ++r) d -= cost[basis[r]] * at(r, c);
        if (d < -1e-12) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      double best = 0.0;
      for (int r = 0; r < m; ++r) {
        if (at(r, enter) <= kPivotTol) continue;
        double ratio = at(r, rhs) / at(r, enter);
        if (leave < 0 || ratio < best - 1e-15 ||
            (ratio <= best + 1e-15 && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return;  // unbounded direction; cannot happen with sum w = 1
      pivot(leave, enter);
    }
  };

  std::vector<double> phase1(cols - 1, 0.0);
  for (int r = 0; r < m; ++r) phase1[tau + r] = 1.0;
  run(phase1, tau + m);
  double infeas = 0.0;
  for (int r = 0; r < m; ++r) {
    if (basis[r] >= tau) infeas += at(r, rhs);
  }
  if (infeas > kHullTol * scale) return std::nullopt;
  // Drive remaining artificials out of the basis.
  for (int r = 0; r < m; ++r) {
    if (basis[r] < tau) continue;
    for (int c = 0; c < tau; ++c) {
      if (std::abs(at(r, c)) > kPivotTol &&
          std::find(basis.begin(), basis.end(), c) == basis.end()) {
        pivot(r, c);
        break;
      }
    }
  }
  std::vector<double> phase2(cols - 1, 0.0);
  for (int j = 0; j < tau; ++j) phase2[j] = -values[j];
  run(phase2, tau);

  PhiHat out;
  out.weights.assign(tau, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < tau) out.weights[basis[r]] = std::max(0.0, at(r, rhs));
  }
  double sum = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  if (sum <= 0.0) return std::nullopt;
  for (double& w : out.weights) w /= sum;
  out.value = 0.0;
  for (int j = 0; j < tau; ++j) out.value += out.weights[j] * values[j];
  return out;
}

LipschitzEstimate LipschitzConstant(const ConcaveTerm& term,
                                    std::span<const double> lower,
                                    std::span<const double> upper) {
  LipschitzEstimate est;
  double sum_sq = 0.0;
  for (int i = 0; i < term.dimension(); ++i) {
    AxisLipschitz axis =
        AxisConstant(term.function, lower[i], upper[i], est.safety_factor);
    sum_sq += axis.constant * axis.constant;
    if (axis.sampled) est.method = LipschitzMethod::kSampledSecant;
    est.singular = est.singular || axis.singular;
  }
  est.constant = std::sqrt(sum_sq);
  return est;
}

BigMValues BigM(const ConcaveTerm& term, std::span<const double> lower,
                std::span<const double> upper, const LipschitzEstimate& k) {
  BigMValues out;
  double dz_sq = 0.0;
  for (int i = 0; i < term.dimension(); ++i) {
    const ConcaveFunction& fn = term.function;
    // A concave function attains its minimum over an interval at an endpoint.
    out.phi_min += std::min(fn.Value(lower[i]), fn.Value(upper[i]));
    out.phi_max += fn.MaxOver(lower[i], upper[i]);
    dz_sq += (upper[i] - lower[i]) * (upper[i] - lower[i]);
  }
  out.delta_z_max = std::sqrt(dz_sq);
  out.lipschitz = k.constant;
  out.m1 = k.constant * out.delta_z_max + out.phi_max - out.phi_min;
  out.m2 = 1.0;
  return out;
}

}  // namespace iasolve
