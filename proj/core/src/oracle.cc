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

#include "iasolve/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <variant>

#include "iasolve/branch_and_bound.h"

namespace iasolve {
namespace {

constexpr double kRowSlack = 1e-9;
constexpr size_t kMaxArgmins = 16;

double ScalarValue(const ConcaveFunction& fn, double t) {
  const FamilyParams& p = fn.params();
  if (const auto* q = std::get_if<Poly4>(&p)) {
    return q->c * std::pow(t, 4) + q->d * std::pow(t, 3) + q->e * t * t + q->h * t;
  }
  if (const auto* q = std::get_if<LogLinear>(&p)) {
    return (q->c == 0.0 ? 0.0 : q->c * std::log(t)) + q->d * t;
  }
  if (const auto* q = std::get_if<SqrtScaled>(&p)) return q->gamma * std::sqrt(t);
  if (const auto* q = std::get_if<PowerScaled>(&p)) return q->a * std::pow(t, q->p);
  const auto& pts = std::get<Tabulated>(p).points;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (t <= pts[i + 1].first) {
      double w = (t - pts[i].first) / (pts[i + 1].first - pts[i].first);
      return pts[i].second + w * (pts[i + 1].second - pts[i].second);
    }
  }
  return pts.back().second;
}

double TermValue(const ConcaveTerm& term, std::span<const double> x) {
  double sum = 0.0;
  for (int idx : term.var_indices) sum += ScalarValue(term.function, x[idx]);
  return sum;
}

double RowActivity(const LinearExpr& e, std::span<const double> x) {
  double sum = e.constant;
  for (const auto& [idx, coef] : e.terms) sum += coef * x[idx];
  return sum;
}

bool Feasible(const Problem& p, std::span<const double> x) {
  for (const LinearConstraint& c : p.linear_constraints) {
    double lhs = RowActivity(c.expr, x);
    double slack = kRowSlack * std::max(1.0, std::abs(c.rhs));
    if (c.sense != Sense::kGreaterEqual && lhs > c.rhs + slack) return false;
    if (c.sense != Sense::kLessEqual && lhs < c.rhs - slack) return false;
  }
  for (const ConcaveConstraint& cc : p.concave_constraints) {
    double v = TermValue(cc.term, x);
    if (x[cc.bound_var] < v - kRowSlack * std::max(1.0, std::abs(v))) return false;
  }
  return true;
}

// Keeps the minimum and the points attaining it.
struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> points;

  void Offer(double v, std::span<const double> x) {
    double tie = 1e-9 * std::max(1.0, std::abs(value));
    if (points.empty() || v < value - tie) {
      value = v;
      points.clear();
      points.emplace_back(x.begin(), x.end());
    } else if (v <= value + tie && points.size() < kMaxArgmins) {
      points.emplace_back(x.begin(), x.end());
    }
  }

  OracleResult Result(std::string method) const {
    OracleResult r;
    r.method = std::move(method);
    if (points.empty()) return r;
    r.status = OracleStatus::kOptimal;
    r.optimum = r.lo = r.hi = value;
    r.argmins = points;
    return r;
  }
};

void CheckSize(double count, int64_t limit) {
  if (count > static_cast<double>(limit)) {
    throw OracleSizeError("enumeration of " + std::to_string(count) +
                          " points exceeds the limit of " + std::to_string(limit));
  }
}

// Uniform grid on [lo, hi] including both ends.
std::vector<double> Grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) {
    g[i] = i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1);
  }
  return g;
}

// Breakpoints of the minimum of tangents at the given abscissae.
PwlPoints TangentEnvelope(const ConcaveFunction& fn, double lo, double hi, int count) {
  std::vector<double> slope;
  std::vector<double> offset;
  for (double t : Grid(lo, hi, count)) {
    std::optional<double> s = fn.Slope(t);
    if (!s || !std::isfinite(*s)) {
      t = lo + 1e-9 * (hi - lo);
      s = fn.Slope(t);
    }
    if (!s || !std::isfinite(*s)) continue;
    slope.push_back(*s);
    offset.push_back(fn.Value(t) - *s * t);
  }
  auto envelope = [&](double y) {
    double v = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < slope.size(); ++k) v = std::min(v, slope[k] * y + offset[k]);
    return v;
  };
  std::vector<double> xs = {lo, hi};
  for (size_t k = 0; k + 1 < slope.size(); ++k) {
    double ds = slope[k] - slope[k + 1];
    if (std::abs(ds) <= 1e-14 * std::max(1.0, std::abs(slope[k]))) continue;
    double x = (offset[k + 1] - offset[k]) / ds;
    if (x > lo && x < hi) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  PwlPoints out;
  for (double x : xs) out.emplace_back(x, envelope(x));
  return out;
}

}  // namespace

double OracleObjective(const Problem& problem, std::span<const double> x) {
  double sum = RowActivity(problem.objective_linear, x);
  for (const ConcaveTerm& t : problem.concave_terms) sum += TermValue(t, x);
  return sum;
}

OracleResult BruteForceInteger(const Problem& problem, int64_t limit) {
  const int n = problem.num_variables();
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  double count = 1.0;
  for (int j = 0; j < n; ++j) {
    const Variable& v = problem.variables[j];
    if (!v.is_integral()) throw std::invalid_argument("brute force needs integral variables");
    lo[j] = std::ceil(v.lower - 1e-9);
    hi[j] = std::floor(v.upper + 1e-9);
    if (hi[j] < lo[j]) return Best{}.Result("brute");
    count *= hi[j] - lo[j] + 1.0;
  }
  CheckSize(count, limit);
  Best best;
  std::vector<double> x = lo;
  for (;;) {
    if (Feasible(problem, x)) best.Offer(OracleObjective(problem, x), x);
    int j = 0;
    while (j < n && x[j] >= hi[j]) {
      x[j] = lo[j];
      ++j;
    }
    if (j == n) break;
    x[j] += 1.0;
  }
  return best.Result("brute");
}

OracleResult EnumerateAssignments(const Problem& problem, int64_t limit) {
  // Layout: x_ij binaries (i-major) followed by one y per source, each y the
  // variable of one scalar concave term.
  const int m = static_cast<int>(problem.concave_terms.size());
  const int total = problem.num_variables();
  if (m < 1 || (total - m) % m != 0) {
    throw std::invalid_argument("not a single-sourcing production-transportation instance");
  }
  const int n = (total - m) / m;
  const int y0 = m * n;
  for (int i = 0; i < m; ++i) {
    const ConcaveTerm& t = problem.concave_terms[i];
    if (t.dimension() != 1 || t.var_indices[0] != y0 + i) {
      throw std::invalid_argument("concave term " + std::to_string(i) + " is not on y_" +
                                  std::to_string(i + 1));
    }
  }
  for (int k = 0; k < y0; ++k) {
    if (problem.variables[k].kind != VarKind::kBinary) {
      throw std::invalid_argument("assignment variables must be binary");
    }
  }
  // Demand weight of x_ij read from source i's production row.
  std::vector<double> weight(y0, 0.0);
  bool found = false;
  for (const LinearConstraint& c : problem.linear_constraints) {
    for (const auto& [idx, coef] : c.expr.terms) {
      if (idx >= y0 && coef < 0.0) {
        found = true;
        for (const auto& [k, a] : c.expr.terms) {
          if (k < y0) weight[k] = a / -coef;
        }
      }
    }
  }
  if (!found) throw std::invalid_argument("no production rows found");
  CheckSize(std::pow(static_cast<double>(m), n), limit);

  Best best;
  std::vector<int> assign(n, 0);
  std::vector<double> x(total, 0.0);
  for (;;) {
    std::fill(x.begin(), x.end(), 0.0);
    bool fits = true;
    for (int j = 0; j < n; ++j) {
      int i = assign[j];
      x[i * n + j] = 1.0;
      x[y0 + i] += weight[i * n + j];
    }
    for (int i = 0; i < m; ++i) {
      const Variable& y = problem.variables[y0 + i];
      if (x[y0 + i] > y.upper + kRowSlack) fits = false;
      x[y0 + i] = std::max(x[y0 + i], y.lower);
    }
    if (fits && Feasible(problem, x)) best.Offer(OracleObjective(problem, x), x);
    int j = 0;
    while (j < n && assign[j] == m - 1) {
      assign[j] = 0;
      ++j;
    }
    if (j == n) break;
    ++assign[j];
  }
  return best.Result("assign");
}

MilpModel EncodePwl(const Problem& problem, const std::vector<PwlPoints>& terms) {
  if (terms.size() != problem.concave_terms.size()) {
    throw std::invalid_argument("need one breakpoint list per concave term");
  }
  if (!problem.concave_constraints.empty()) {
    throw std::invalid_argument("piecewise-linear encoding covers objective terms only");
  }
  MilpModel m;
  m.name = problem.name.empty() ? "pwl" : problem.name + "_pwl";
  m.variables = problem.variables;
  m.objective = problem.objective_linear;
  for (size_t i = 0; i < problem.linear_constraints.size(); ++i) {
    const LinearConstraint& c = problem.linear_constraints[i];
    m.AddConstraint(c.expr, c.sense, c.rhs, "row_" + std::to_string(i));
  }
  for (size_t t = 0; t < terms.size(); ++t) {
    const ConcaveTerm& term = problem.concave_terms[t];
    if (term.dimension() != 1) throw std::invalid_argument("non-scalar term in encoding");
    PwlPoints pts = terms[t];
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              pts.end());
    if (pts.empty()) throw std::invalid_argument("empty breakpoint list");
    const std::string tag = std::to_string(t);
    const int g = static_cast<int>(pts.size());
    double v_lo = pts[0].second;
    double v_hi = pts[0].second;
    for (const auto& [z, v] : pts) {
      v_lo = std::min(v_lo, v);
      v_hi = std::max(v_hi, v);
    }
    std::vector<int> lam(g);
    for (int s = 0; s < g; ++s) {
      lam[s] = m.AddVariable("lam_" + tag + "_" + std::to_string(s), 0.0, 1.0);
    }
    int zeta = m.AddVariable("zeta_" + tag, v_lo, v_hi);
    m.objective.terms.emplace_back(zeta, 1.0);
    LinearExpr sum;
    LinearExpr link;
    LinearExpr value;
    for (int s = 0; s < g; ++s) {
      sum.terms.emplace_back(lam[s], 1.0);
      link.terms.emplace_back(lam[s], pts[s].first);
      value.terms.emplace_back(lam[s], pts[s].second);
    }
    link.terms.emplace_back(term.var_indices[0], -1.0);
    value.terms.emplace_back(zeta, -1.0);
    m.AddConstraint(std::move(sum), Sense::kEqual, 1.0, "pwl_sum_" + tag);
    m.AddConstraint(std::move(link), Sense::kEqual, 0.0, "pwl_link_" + tag);
    m.AddConstraint(std::move(value), Sense::kEqual, 0.0, "pwl_value_" + tag);
    // Segment s joins vertices s and s+1; segment codes are reflected Gray.
    const int segments = g - 1;
    int bits = 0;
    while ((1 << bits) < segments) ++bits;
    auto code = [](int s) { return s ^ (s >> 1); };
    for (int l = 0; l < bits; ++l) {
      int w = m.AddVariable("w_" + tag + "_" + std::to_string(l), 0.0, 1.0, VarKind::kBinary);
      LinearExpr ones;
      LinearExpr zeros;
      for (int v = 0; v < g; ++v) {
        bool all_one = true;
        bool all_zero = true;
        for (int s : {v - 1, v}) {
          if (s < 0 || s >= segments) continue;
          bool bit = (code(s) >> l) & 1;
          all_one = all_one && bit;
          all_zero = all_zero && !bit;
        }
        if (all_one) ones.terms.emplace_back(lam[v], 1.0);
        if (all_zero) zeros.terms.emplace_back(lam[v], 1.0);
      }
      ones.terms.emplace_back(w, -1.0);
      zeros.terms.emplace_back(w, 1.0);
      m.AddConstraint(std::move(ones), Sense::kLessEqual, 0.0,
                      "sos_one_" + tag + "_" + std::to_string(l));
      m.AddConstraint(std::move(zeros), Sense::kLessEqual, 1.0,
                      "sos_zero_" + tag + "_" + std::to_string(l));
    }
  }
  return m;
}

namespace {

PwlPoints SortedUnique(PwlPoints pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) { return a.first == b.first; }),
            pts.end());
  return pts;
}

double PwlAt(const PwlPoints& pts, double y) {
  auto it = std::upper_bound(pts.begin(), pts.end(), y,
                             [](double v, const auto& p) { return v < p.first; });
  if (it == pts.begin()) return pts.front().second;
  if (it == pts.end()) return pts.back().second;
  const auto& [x0, v0] = *(it - 1);
  const auto& [x1, v1] = *it;
  return v0 + (v1 - v0) * (y - x0) / (x1 - x0);
}

struct IntervalNode {
  double bound = 0.0;
  std::vector<std::pair<int, int>> spans;  // breakpoint index range per term
  size_t split_term = 0;  // term with the largest chord error at the relaxation point
  double split_at = 0.0;  // that term's variable value there
  bool operator>(const IntervalNode& other) const { return bound > other.bound; }
};

}  // namespace

PwlMinimum MinimizeConcavePwl(const Problem& problem, const std::vector<PwlPoints>& terms,
                              double relative_gap) {
  if (terms.size() != problem.concave_terms.size()) {
    throw std::invalid_argument("need one breakpoint list per concave term");
  }
  if (!problem.concave_constraints.empty()) {
    throw std::invalid_argument("piecewise-linear minimization covers objective terms only");
  }
  std::vector<PwlPoints> pts(terms.size());
  std::vector<int> var(terms.size());
  for (size_t t = 0; t < terms.size(); ++t) {
    const ConcaveTerm& term = problem.concave_terms[t];
    if (term.dimension() != 1) throw std::invalid_argument("non-scalar term in minimization");
    var[t] = term.var_indices[0];
    pts[t] = SortedUnique(terms[t]);
    if (pts[t].empty()) throw std::invalid_argument("empty breakpoint list");
    const Variable& v = problem.variables[var[t]];
    const double reach = 1e-9 * std::max(1.0, v.upper - v.lower);
    if (pts[t].front().first > v.lower + reach || pts[t].back().first < v.upper - reach) {
      throw std::invalid_argument("breakpoints do not cover the variable bounds");
    }
    for (size_t k = 2; k < pts[t].size(); ++k) {
      auto slope = [&](size_t i) {
        return (pts[t][i].second - pts[t][i - 1].second) / (pts[t][i].first - pts[t][i - 1].first);
      };
      if (slope(k) > slope(k - 1) + 1e-9 * std::max(1.0, std::abs(slope(k - 1)))) {
        throw std::invalid_argument("breakpoint list is not concave");
      }
    }
  }

  MilpModel base;
  base.name = problem.name.empty() ? "pwl_bb" : problem.name + "_pwl_bb";
  base.variables = problem.variables;
  base.objective = problem.objective_linear;
  for (const LinearConstraint& c : problem.linear_constraints) {
    base.AddConstraint(c.expr, c.sense, c.rhs);
  }
  SolveParams node_params;
  node_params.relative_gap = 1e-9;

  PwlMinimum out;
  auto true_value = [&](const std::vector<double>& x) {
    double v = problem.objective_linear.Evaluate(x);
    for (size_t t = 0; t < pts.size(); ++t) v += PwlAt(pts[t], x[var[t]]);
    return v;
  };
  auto chord = [&](size_t t, int a, int b, double y) {
    const auto& [x0, v0] = pts[t][a];
    const auto& [x1, v1] = pts[t][b];
    return a == b ? v0 : v0 + (v1 - v0) * (y - x0) / (x1 - x0);
  };
  // Solves the chord relaxation of a node; nullopt when it is infeasible.
  auto relax = [&](const std::vector<std::pair<int, int>>& spans) -> std::optional<MilpSolution> {
    MilpModel m = base;
    for (size_t t = 0; t < spans.size(); ++t) {
      auto [a, b] = spans[t];
      Variable& v = m.variables[var[t]];
      v.lower = std::max(v.lower, pts[t][a].first);
      v.upper = std::min(v.upper, pts[t][b].first);
      if (v.lower > v.upper) return std::nullopt;
      const double slope = a == b ? 0.0
                                  : (pts[t][b].second - pts[t][a].second) /
                                        (pts[t][b].first - pts[t][a].first);
      m.objective.terms.emplace_back(var[t], slope);
      m.objective.constant += pts[t][a].second - slope * pts[t][a].first;
    }
    MilpSolution s = SolveMilp(m, node_params);
    if (s.status == MilpStatus::kInfeasible || !s.has_incumbent) return std::nullopt;
    return s;
  };

  double floor = kInfinity;  // least bound among nodes closed without branching
  std::priority_queue<IntervalNode, std::vector<IntervalNode>, std::greater<>> open;
  auto process = [&](std::vector<std::pair<int, int>> spans) {
    std::optional<MilpSolution> s = relax(spans);
    ++out.nodes;
    if (out.nodes > kOracleSizeLimit) throw OracleSizeError("interval branch-and-bound node limit");
    if (!s) return;
    std::vector<double> x(s->x.begin(), s->x.begin() + problem.num_variables());
    const double value = true_value(x);
    if (!out.feasible || value < out.value) {
      out.feasible = true;
      out.value = value;
      out.x = x;
    }
    const double tol = relative_gap * std::max(1.0, std::abs(out.value));
    size_t worst = 0;
    double worst_err = 0.0;
    for (size_t t = 0; t < spans.size(); ++t) {
      double y = x[var[t]];
      double err = PwlAt(pts[t], y) - chord(t, spans[t].first, spans[t].second, y);
      if (err > worst_err) {
        worst_err = err;
        worst = t;
      }
    }
    if (worst_err <= tol || s->objective >= out.value - tol) {
      floor = std::min(floor, s->objective);
      return;
    }
    open.push({s->objective, std::move(spans), worst, x[var[worst]]});
  };

  std::vector<std::pair<int, int>> root;
  for (const PwlPoints& p : pts) root.emplace_back(0, static_cast<int>(p.size()) - 1);
  process(root);
  while (!open.empty()) {
    IntervalNode node = open.top();
    const double tol = relative_gap * std::max(1.0, std::abs(out.value));
    if (node.bound >= out.value - tol) break;
    open.pop();
    const size_t worst = node.split_term;
    const double y = node.split_at;
    auto [a, b] = node.spans[worst];
    int k = a + 1;
    while (k < b - 1 && pts[worst][k + 1].first <= y) ++k;
    if (k + 1 < b && std::abs(pts[worst][k + 1].first - y) < std::abs(pts[worst][k].first - y)) ++k;
    auto left = node.spans;
    auto right = node.spans;
    left[worst].second = k;
    right[worst].first = k;
    process(std::move(left));
    process(std::move(right));
  }
  if (!out.feasible) return out;
  out.bound = std::min({out.value, floor, open.empty() ? kInfinity : open.top().bound});
  return out;
}

MilpModel PwlMilpEncode(const Problem& problem, const std::vector<BreakpointSet>& sets) {
  std::vector<PwlPoints> terms;
  for (const BreakpointSet& set : sets) {
    if (set.dimension() != 1) throw std::invalid_argument("non-scalar term in encoding");
    PwlPoints pts;
    for (int j = 0; j < set.size(); ++j) pts.emplace_back(set.point(j)[0], set.value(j));
    terms.push_back(std::move(pts));
  }
  return EncodePwl(problem, terms);
}

OracleResult SandwichContinuous(const Problem& problem, int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("sandwich needs at least 2 grid points");
  std::vector<PwlPoints> secant;
  std::vector<PwlPoints> tangent;
  for (const ConcaveTerm& term : problem.concave_terms) {
    if (term.dimension() != 1) throw std::invalid_argument("non-scalar term in sandwich");
    const Variable& v = problem.variables[term.var_indices[0]];
    PwlPoints pts;
    for (double z : Grid(v.lower, v.upper, grid_points)) {
      pts.emplace_back(z, ScalarValue(term.function, z));
    }
    secant.push_back(std::move(pts));
    tangent.push_back(TangentEnvelope(term.function, v.lower, v.upper, grid_points));
  }
  PwlMinimum lo = MinimizeConcavePwl(problem, secant);
  OracleResult r;
  r.method = "sandwich";
  if (!lo.feasible) return r;
  PwlMinimum hi = MinimizeConcavePwl(problem, tangent);
  if (!hi.feasible) throw std::runtime_error("tangent surrogate infeasible on a feasible problem");
  const int n = problem.num_variables();
  Best best;
  for (const PwlMinimum* s : {&lo, &hi}) {
    std::vector<double> x = s->x;
    for (int j = 0; j < n; ++j) {
      const Variable& v = problem.variables[j];
      if (v.is_integral()) x[j] = std::round(x[j]);
      x[j] = std::clamp(x[j], v.lower, v.upper);
    }
    best.Offer(OracleObjective(problem, x), x);
  }
  r = best.Result("sandwich");
  r.lo = lo.bound;
  r.hi = hi.value;
  return r;
}

}  // namespace iasolve
