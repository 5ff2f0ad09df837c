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

#include "iasolve/kkt_master.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace iasolve {
namespace {

std::string Tag(const std::string& base, int t) { return base + "_" + std::to_string(t); }
std::string Tag(const std::string& base, int t, int j) {
  return base + "_" + std::to_string(t) + "_" + std::to_string(j);
}

// Adds the weight/dual block of one breakpoint set. `epigraph` is the column
// that bounds sum mu phi(z) from above.
TermBlock AddBlock(MilpModel& m, const std::string& prefix, int t,
                   const BreakpointSet& set, const BigMValues& big_m, double m1,
                   std::optional<int> epigraph) {
  const int k = set.dimension();
  const int tau = set.size();
  if (tau == 0) throw std::invalid_argument("empty breakpoint set");
  TermBlock b;
  b.x = set.term().var_indices;
  b.m1 = m1;

  double v_min = big_m.phi_min;
  double v_max = big_m.phi_max;
  double z_norm = 0.0;
  for (int j = 0; j < tau; ++j) {
    v_min = std::min(v_min, set.value(j));
    v_max = std::max(v_max, set.value(j));
    double sq = 0.0;
    for (double c : set.point(j)) sq += c * c;
    z_norm = std::max(z_norm, std::sqrt(sq));
  }
  // Optimal duals satisfy |beta| <= K and |alpha| <= max|phi| + K |z|.
  const double dual_bound = big_m.m1 + std::abs(v_max) + std::abs(v_min) +
                            big_m.lipschitz * (1.0 + z_norm) + 1.0;

  for (int j = 0; j < tau; ++j) b.mu.push_back(m.AddVariable(Tag(prefix + "mu", t, j), 0.0, 1.0));
  for (int j = 0; j < tau; ++j) {
    b.u.push_back(m.AddVariable(Tag(prefix + "u", t, j), 0.0, 1.0, VarKind::kBinary));
  }
  for (int j = 0; j < tau; ++j) {
    b.gamma.push_back(m.AddVariable(Tag(prefix + "gamma", t, j), 0.0, m1));
  }
  b.alpha = m.AddVariable(Tag(prefix + "alpha", t), -dual_bound, dual_bound);
  for (int i = 0; i < k; ++i) {
    b.beta.push_back(m.AddVariable(Tag(prefix + "beta", t, i), -dual_bound, dual_bound));
  }
  if (epigraph) {
    b.zeta = *epigraph;
  } else {
    b.zeta = m.AddVariable(Tag(prefix + "zeta", t), v_min - 1.0, v_max + 1.0);
  }

  LinearExpr sum;
  for (int j = 0; j < tau; ++j) sum.terms.emplace_back(b.mu[j], 1.0);
  m.AddConstraint(std::move(sum), Sense::kEqual, 1.0, Tag(prefix + "weights", t));
  for (int i = 0; i < k; ++i) {
    LinearExpr link;
    for (int j = 0; j < tau; ++j) {
      double z = set.point(j)[i];
      if (z != 0.0) link.terms.emplace_back(b.mu[j], z);
    }
    link.terms.emplace_back(b.x[i], -1.0);
    m.AddConstraint(std::move(link), Sense::kEqual, 0.0, Tag(prefix + "link", t, i));
  }
  LinearExpr epi;
  for (int j = 0; j < tau; ++j) {
    if (set.value(j) != 0.0) epi.terms.emplace_back(b.mu[j], set.value(j));
  }
  epi.terms.emplace_back(b.zeta, -1.0);
  m.AddConstraint(std::move(epi), Sense::kLessEqual, 0.0, Tag(prefix + "epi", t));
  for (int j = 0; j < tau; ++j) {
    // -alpha - beta.z_j + gamma_j = -phi(z_j)
    LinearExpr stat;
    stat.terms.emplace_back(b.alpha, -1.0);
    for (int i = 0; i < k; ++i) {
      double z = set.point(j)[i];
      if (z != 0.0) stat.terms.emplace_back(b.beta[i], -z);
    }
    stat.terms.emplace_back(b.gamma[j], 1.0);
    m.AddConstraint(std::move(stat), Sense::kEqual, -set.value(j), Tag(prefix + "stat", t, j));
  }
  for (int j = 0; j < tau; ++j) {
    m.AddConstraint(LinearExpr{{{b.gamma[j], 1.0}, {b.u[j], -m1}}, 0.0}, Sense::kLessEqual,
                    0.0, Tag(prefix + "slack_on", t, j));
    m.AddConstraint(LinearExpr{{{b.mu[j], 1.0}, {b.u[j], big_m.m2}}, 0.0},
                    Sense::kLessEqual, big_m.m2, Tag(prefix + "weight_on", t, j));
  }
  return b;
}

}  // namespace

MasterModel BuildMaster(const Problem& problem,
                        const std::vector<BreakpointSet>& term_sets,
                        const std::vector<BigMValues>& term_big_m,
                        const std::vector<BreakpointSet>& constraint_sets,
                        const std::vector<BigMValues>& constraint_big_m,
                        const MasterOptions& options) {
  if (term_sets.size() != problem.concave_terms.size() ||
      term_big_m.size() != problem.concave_terms.size()) {
    throw std::invalid_argument("need one breakpoint set and one BigM per concave term");
  }
  if (constraint_sets.size() != problem.concave_constraints.size() ||
      constraint_big_m.size() != problem.concave_constraints.size()) {
    throw std::invalid_argument(
        "need one breakpoint set and one BigM per concave constraint");
  }
  MasterModel out;
  MilpModel& m = out.model;
  m.name = problem.name.empty() ? "master" : problem.name + "_master";
  m.variables = problem.variables;
  out.map.num_original = problem.num_variables();
  m.objective = problem.objective_linear;
  for (size_t i = 0; i < problem.linear_constraints.size(); ++i) {
    const LinearConstraint& c = problem.linear_constraints[i];
    m.AddConstraint(c.expr, c.sense, c.rhs, "row_" + std::to_string(i));
  }
  for (size_t t = 0; t < term_sets.size(); ++t) {
    double m1 = options.m1_override.value_or(term_big_m[t].m1);
    TermBlock b = AddBlock(m, "", static_cast<int>(t), term_sets[t], term_big_m[t], m1,
                           std::nullopt);
    b.source_index = static_cast<int>(t);
    m.objective.terms.emplace_back(b.zeta, 1.0);
    out.map.terms.push_back(std::move(b));
  }
  for (size_t q = 0; q < constraint_sets.size(); ++q) {
    const ConcaveConstraint& cc = problem.concave_constraints[q];
    TermBlock b = AddBlock(m, "cc_", static_cast<int>(q), constraint_sets[q],
                           constraint_big_m[q], constraint_big_m[q].m1, cc.bound_var);
    b.source_index = static_cast<int>(q);
    b.is_constraint = true;
    out.map.constraints.push_back(std::move(b));
  }
  return out;
}

MasterSolution ExtractSolution(const MasterModel& master,
                               const std::vector<BreakpointSet>& term_sets,
                               const MilpSolution& solution) {
  if (!solution.has_incumbent) throw std::invalid_argument("master has no solution");
  MasterSolution out;
  out.x.assign(solution.x.begin(), solution.x.begin() + master.map.num_original);
  out.lower_bound = solution.objective;
  for (size_t t = 0; t < master.map.terms.size(); ++t) {
    const TermBlock& b = master.map.terms[t];
    const BreakpointSet& set = term_sets[t];
    out.phi_hat.push_back(solution.x[b.zeta]);
    std::vector<double> mu;
    for (int idx : b.mu) mu.push_back(solution.x[idx]);
    for (size_t i = 0; i < b.x.size(); ++i) {
      double combo = 0.0;
      for (int j = 0; j < set.size(); ++j) combo += mu[j] * set.point(j)[i];
      double x = out.x[b.x[i]];
      if (std::abs(combo - x) > 1e-6 * std::max(1.0, std::abs(x))) {
        throw std::logic_error("master solution inconsistent: term " + std::to_string(t) +
                               " weights give " + std::to_string(combo) + " but x is " +
                               std::to_string(x));
      }
    }
    out.mu.push_back(std::move(mu));
  }
  return out;
}

}  // namespace iasolve
