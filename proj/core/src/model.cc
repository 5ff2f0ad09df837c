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

#include "iasolve/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace iasolve {
namespace {

constexpr int kConcavityGrid = 101;
constexpr double kConcavitySlack = 1e-9;

void CheckExpr(const LinearExpr& expr, int n, const std::string& where,
               std::vector<Diagnostic>& out) {
  std::set<int> seen;
  for (const auto& [idx, coef] : expr.terms) {
    if (idx < 0 || idx >= n) {
      out.push_back({where, "invalid variable index " + std::to_string(idx)});
    } else if (!seen.insert(idx).second) {
      out.push_back({where, "duplicate variable index " + std::to_string(idx)});
    }
    if (!std::isfinite(coef)) out.push_back({where, "non-finite coefficient"});
  }
  if (!std::isfinite(expr.constant)) out.push_back({where, "non-finite constant"});
}

void CheckTerm(const Problem& problem, const ConcaveTerm& term,
               const std::string& where, std::vector<Diagnostic>& out) {
  const int n = problem.num_variables();
  if (term.var_indices.empty()) {
    out.push_back({where, "term has no variables"});
    return;
  }
  std::set<int> seen;
  for (int idx : term.var_indices) {
    if (idx < 0 || idx >= n) {
      out.push_back({where, "invalid variable index " + std::to_string(idx)});
      return;
    }
    if (!seen.insert(idx).second) {
      out.push_back({where, "duplicate variable index " + std::to_string(idx)});
      return;
    }
  }
  const ConcaveFunction& fn = term.function;
  if (const auto* tab = std::get_if<Tabulated>(&fn.params())) {
    if (term.dimension() != 1) {
      out.push_back({where, "tabulated family requires a single variable"});
      return;
    }
    if (tab->points.empty()) {
      out.push_back({where, "tabulated family has no points"});
      return;
    }
  }
  for (int idx : term.var_indices) {
    const Variable& v = problem.variables[idx];
    if (!std::isfinite(v.lower) || !std::isfinite(v.upper)) {
      out.push_back({where, "variable " + v.name + " in a concave term is unbounded"});
      return;
    }
    if (v.lower > v.upper) return;  // reported on the variable itself
    if (const auto* log = std::get_if<LogLinear>(&fn.params())) {
      if (log->c != 0.0 && v.lower <= 0.0) {
        out.push_back({where, "log domain violation: variable " + v.name +
                                  " has lower bound <= 0"});
        return;
      }
    }
    if (!fn.Evaluable(v.lower) || !fn.Evaluable(v.upper)) {
      out.push_back({where, std::string(fn.family_name()) +
                                " is not evaluable on the box of variable " + v.name});
      return;
    }
    std::string reason = CheckSampledConcavity(fn, v.lower, v.upper);
    if (!reason.empty()) {
      out.push_back({where, "concavity check failed on variable " + v.name + ": " +
                                reason});
      return;
    }
  }
}

}  // namespace

std::string_view VarKindName(VarKind kind) {
  switch (kind) {
    case VarKind::kContinuous:
      return "continuous";
    case VarKind::kInteger:
      return "integer";
    case VarKind::kBinary:
      return "binary";
  }
  return "continuous";
}

std::optional<VarKind> ParseVarKind(std::string_view name) {
  if (name == "continuous") return VarKind::kContinuous;
  if (name == "integer") return VarKind::kInteger;
  if (name == "binary") return VarKind::kBinary;
  return std::nullopt;
}

std::string_view SenseSymbol(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual:
      return "<=";
    case Sense::kGreaterEqual:
      return ">=";
    case Sense::kEqual:
      return "=";
  }
  return "<=";
}

std::optional<Sense> ParseSense(std::string_view symbol) {
  if (symbol == "<=") return Sense::kLessEqual;
  if (symbol == ">=") return Sense::kGreaterEqual;
  if (symbol == "=" || symbol == "==") return Sense::kEqual;
  return std::nullopt;
}

double LinearExpr::Evaluate(std::span<const double> x) const {
  double sum = constant;
  for (const auto& [idx, coef] : terms) sum += coef * x[idx];
  return sum;
}

double LinearConstraint::Violation(std::span<const double> x) const {
  double lhs = expr.Evaluate(x);
  switch (sense) {
    case Sense::kLessEqual:
      return std::max(0.0, lhs - rhs);
    case Sense::kGreaterEqual:
      return std::max(0.0, rhs - lhs);
    case Sense::kEqual:
      return std::abs(lhs - rhs);
  }
  return 0.0;
}

double ConcaveTerm::Evaluate(std::span<const double> point) const {
  double sum = 0.0;
  for (double t : point) sum += function.Value(t);
  return sum;
}

double ConcaveTerm::EvaluateAt(std::span<const double> x) const {
  double sum = 0.0;
  for (int idx : var_indices) sum += function.Value(x[idx]);
  return sum;
}

std::string FormatDiagnostic(const Diagnostic& d) {
  return d.location.empty() ? d.message : d.location + ": " + d.message;
}

std::string CheckSampledConcavity(const ConcaveFunction& fn, double lower,
                                  double upper) {
  if (!(upper > lower)) return "";
  std::vector<double> values(kConcavityGrid);
  const double step = (upper - lower) / (kConcavityGrid - 1);
  for (int i = 0; i < kConcavityGrid; ++i) {
    double t = i + 1 == kConcavityGrid ? upper : lower + i * step;
    if (!fn.Evaluable(t)) return "not evaluable at " + std::to_string(t);
    values[i] = fn.Value(t);
  }
  for (int i = 1; i + 1 < kConcavityGrid; ++i) {
    double chord = 0.5 * (values[i - 1] + values[i + 1]);
    double scale = std::max({1.0, std::abs(values[i - 1]), std::abs(values[i + 1])});
    if (values[i] < chord - kConcavitySlack * scale) {
      std::ostringstream os;
      os << "midpoint inequality fails at t=" << lower + i * step;
      return os.str();
    }
  }
  return "";
}

std::vector<Diagnostic> Validate(const Problem& problem) {
  std::vector<Diagnostic> out;
  const int n = problem.num_variables();
  for (int j = 0; j < n; ++j) {
    const Variable& v = problem.variables[j];
    std::string where = "variables[" + std::to_string(j) + "]";
    if (std::isnan(v.lower) || std::isnan(v.upper)) {
      out.push_back({where, "NaN bound"});
      continue;
    }
    if (!std::isfinite(v.lower) || !std::isfinite(v.upper)) {
      out.push_back({where, "unbounded variable " + v.name});
    }
    if (v.lower > v.upper) out.push_back({where, "inverted bounds"});
    if (v.kind == VarKind::kBinary && (v.lower != 0.0 || v.upper != 1.0)) {
      out.push_back({where, "binary variable must have bounds [0, 1]"});
    }
  }
  CheckExpr(problem.objective_linear, n, "objective_linear", out);
  for (size_t i = 0; i < problem.linear_constraints.size(); ++i) {
    const auto& row = problem.linear_constraints[i];
    std::string where = "linear_constraints[" + std::to_string(i) + "]";
    CheckExpr(row.expr, n, where, out);
    if (!std::isfinite(row.rhs)) out.push_back({where, "non-finite rhs"});
  }
  if (problem.concave_terms.empty() && problem.concave_constraints.empty()) {
    out.push_back({"", "no concave terms or concave constraints; problem is a plain MILP"});
  }
  for (size_t t = 0; t < problem.concave_terms.size(); ++t) {
    CheckTerm(problem, problem.concave_terms[t],
              "concave_terms[" + std::to_string(t) + "]", out);
  }
  for (size_t c = 0; c < problem.concave_constraints.size(); ++c) {
    const auto& row = problem.concave_constraints[c];
    std::string where = "concave_constraints[" + std::to_string(c) + "]";
    if (row.bound_var < 0 || row.bound_var >= n) {
      out.push_back({where, "invalid bound variable index"});
    } else if (std::find(row.term.var_indices.begin(), row.term.var_indices.end(),
                         row.bound_var) != row.term.var_indices.end()) {
      out.push_back({where, "bound variable appears in its own term"});
    }
    if (row.big_m && !(*row.big_m > 0.0)) {
      out.push_back({where, "big_m must be positive"});
    }
    CheckTerm(problem, row.term, where + ".term", out);
  }
  return out;
}

double EvalObjective(const Problem& problem, std::span<const double> x) {
  if (static_cast<int>(x.size()) != problem.num_variables()) {
    throw std::invalid_argument("point has " + std::to_string(x.size()) +
                                " entries, problem has " +
                                std::to_string(problem.num_variables()));
  }
  for (int j = 0; j < problem.num_variables(); ++j) {
    const Variable& v = problem.variables[j];
    double scale = std::max(1.0, std::abs(x[j]));
    if (x[j] < v.lower - kIntegralityTolerance * scale ||
        x[j] > v.upper + kIntegralityTolerance * scale) {
      throw std::invalid_argument("x[" + std::to_string(j) + "] outside bounds");
    }
    if (v.is_integral() && std::abs(x[j] - std::round(x[j])) > kIntegralityTolerance) {
      throw std::invalid_argument("x[" + std::to_string(j) + "] is not integral");
    }
  }
  double value = problem.objective_linear.Evaluate(x);
  for (const ConcaveTerm& term : problem.concave_terms) value += term.EvaluateAt(x);
  return value;
}

double MaxViolation(const Problem& problem, std::span<const double> x) {
  double worst = 0.0;
  for (int j = 0; j < problem.num_variables(); ++j) {
    const Variable& v = problem.variables[j];
    worst = std::max({worst, v.lower - x[j], x[j] - v.upper});
    if (v.is_integral()) worst = std::max(worst, std::abs(x[j] - std::round(x[j])));
  }
  for (const auto& row : problem.linear_constraints) {
    worst = std::max(worst, row.Violation(x));
  }
  for (const auto& row : problem.concave_constraints) {
    bool ok = true;
    for (int idx : row.term.var_indices) ok = ok && row.term.function.Evaluable(x[idx]);
    if (!ok) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, row.term.EvaluateAt(x) - x[row.bound_var]);
  }
  return worst;
}

std::pair<std::vector<double>, std::vector<double>> TermBounds(
    const Problem& problem, const ConcaveTerm& term) {
  std::vector<double> lo;
  std::vector<double> hi;
  lo.reserve(term.var_indices.size());
  hi.reserve(term.var_indices.size());
  for (int idx : term.var_indices) {
    lo.push_back(problem.variables[idx].lower);
    hi.push_back(problem.variables[idx].upper);
  }
  return {lo, hi};
}

}  // namespace iasolve
