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

#ifndef IASOLVE_MODEL_H_
#define IASOLVE_MODEL_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iasolve/concave_function.h"

namespace iasolve {

// Tolerance for checking a point against a variable's integrality.
inline constexpr double kIntegralityTolerance = 1e-6;

enum class VarKind { kContinuous, kInteger, kBinary };

std::string_view VarKindName(VarKind kind);
std::optional<VarKind> ParseVarKind(std::string_view name);

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  VarKind kind = VarKind::kContinuous;

  bool is_integral() const { return kind != VarKind::kContinuous; }
  bool operator==(const Variable&) const = default;
};

struct LinearExpr {
  std::vector<std::pair<int, double>> terms;
  double constant = 0.0;

  double Evaluate(std::span<const double> x) const;
  bool operator==(const LinearExpr&) const = default;
};

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

std::string_view SenseSymbol(Sense sense);
std::optional<Sense> ParseSense(std::string_view symbol);

struct LinearConstraint {
  LinearExpr expr;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;

  // Amount by which the constraint is violated at x (0 when satisfied).
  double Violation(std::span<const double> x) const;
  bool operator==(const LinearConstraint&) const = default;
};

// phi(x[v_1]) + ... + phi(x[v_k]) for the scalar concave function phi.
struct ConcaveTerm {
  std::vector<int> var_indices;
  ConcaveFunction function;

  int dimension() const { return static_cast<int>(var_indices.size()); }
  // Value at the term's own coordinates (length k).
  double Evaluate(std::span<const double> point) const;
  // Value at a full problem point.
  double EvaluateAt(std::span<const double> x) const;
  bool operator==(const ConcaveTerm&) const = default;
};

// x[bound_var] >= term(x). big_m overrides the complementarity constant of
// the reformulated constraint.
struct ConcaveConstraint {
  int bound_var = -1;
  ConcaveTerm term;
  std::optional<double> big_m;

  bool operator==(const ConcaveConstraint&) const = default;
};

// min f(x) + sum_t phi_t(x) subject to linear rows, concave rows and bounds.
struct Problem {
  std::string name;
  std::vector<Variable> variables;
  LinearExpr objective_linear;
  std::vector<ConcaveTerm> concave_terms;
  std::vector<LinearConstraint> linear_constraints;
  std::vector<ConcaveConstraint> concave_constraints;

  int num_variables() const { return static_cast<int>(variables.size()); }
  bool operator==(const Problem&) const = default;
};

struct Diagnostic {
  std::string location;  // e.g. "variables[3]" or "concave_terms[0]"
  std::string message;
};

std::string FormatDiagnostic(const Diagnostic& d);

// Checks every structural invariant plus a sampled concavity test on each
// term's box. Never throws.
std::vector<Diagnostic> Validate(const Problem& problem);

// Midpoint test on a 101-point grid per axis with 1e-9 slack. Returns an
// empty string on success, else the reason.
std::string CheckSampledConcavity(const ConcaveFunction& fn, double lower,
                                  double upper);

// f(x) + sum_t phi_t(x). Throws std::invalid_argument when x is outside the
// bounds or breaks integrality (1e-6), std::domain_error when a term is not
// evaluable.
double EvalObjective(const Problem& problem, std::span<const double> x);

// Largest violation over bounds, integrality, linear rows and concave rows.
double MaxViolation(const Problem& problem, std::span<const double> x);

// Lower and upper bounds of a term's variables, in term order.
std::pair<std::vector<double>, std::vector<double>> TermBounds(
    const Problem& problem, const ConcaveTerm& term);

}  // namespace iasolve

#endif  // IASOLVE_MODEL_H_
