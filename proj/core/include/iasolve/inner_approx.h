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

#ifndef IASOLVE_INNER_APPROX_H_
#define IASOLVE_INNER_APPROX_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "iasolve/model.h"

namespace iasolve {

// Two breakpoints closer than this in the infinity norm are the same point.
inline constexpr double kDuplicateTolerance = 1e-9;

enum class InitMode { kCorners, kSimplex, kAuto };

std::string_view InitModeName(InitMode mode);
std::optional<InitMode> ParseInitMode(std::string_view name);

// Corners are used up to this many term variables under InitMode::kAuto.
inline constexpr int kAutoCornerLimit = 10;

// Maximizer of the inner approximation LP at one point.
struct PhiHat {
  double value = 0.0;
  std::vector<double> weights;  // one per breakpoint, sums to 1
};

enum class AddResult { kAdded, kDuplicate };

// Sample points z^1..z^tau of one concave term together with the cached
// function values. The inner approximation is the upper concave envelope of
// the sampled graph over the convex hull of the points.
class BreakpointSet {
 public:
  BreakpointSet(int term_index, ConcaveTerm term);

  int term_index() const { return term_index_; }
  const ConcaveTerm& term() const { return term_; }
  int dimension() const { return term_.dimension(); }
  int size() const { return static_cast<int>(values_.size()); }

  std::span<const double> point(int j) const {
    return {points_.data() + static_cast<size_t>(j) * dimension(),
            static_cast<size_t>(dimension())};
  }
  double value(int j) const { return values_[j]; }
  int created_at(int j) const { return created_at_[j]; }
  const std::vector<double>& values() const { return values_; }

  // Appends z unless it duplicates an existing point. Evaluates the term at
  // z; throws std::domain_error when that fails.
  AddResult Add(std::span<const double> z, int iteration = 0);

  // nullopt when x lies outside the hull of the points.
  std::optional<PhiHat> Evaluate(std::span<const double> x) const;

  // Largest |slope| between adjacent sorted breakpoints (one-dimensional
  // terms only; 0 otherwise). This is the Lipschitz constant of phi-hat.
  double MaxAdjacentSlope() const;

  // Componentwise min and max over the points.
  std::pair<std::vector<double>, std::vector<double>> Extent() const;

 private:
  int term_index_;
  ConcaveTerm term_;
  std::vector<double> points_;  // row-major, size() x dimension()
  std::vector<double> values_;
  std::vector<int> created_at_;
};

// Box corners (2^k points) or the enlarged simplex {0, k e_1, ..., k e_k}
// mapped from the unit box onto [lower, upper].
BreakpointSet InitialSet(int term_index, const ConcaveTerm& term,
                         std::span<const double> lower,
                         std::span<const double> upper, InitMode mode);

// Solves max sum_j w_j v_j s.t. sum_j w_j = 1, sum_j w_j z^j = x, w >= 0 with
// a dense two-phase simplex. Points are row-major (tau x k).
std::optional<PhiHat> SolveWeightsLp(std::span<const double> points,
                                     std::span<const double> values, int dim,
                                     std::span<const double> x);

enum class LipschitzMethod { kClosedForm, kSampledSecant };

struct LipschitzEstimate {
  double constant = 0.0;
  LipschitzMethod method = LipschitzMethod::kClosedForm;
  double safety_factor = 1.05;
  // The derivative is unbounded at a box endpoint; the estimate comes from
  // secants over a slightly shrunk box.
  bool singular = false;
};

LipschitzEstimate LipschitzConstant(const ConcaveTerm& term,
                                    std::span<const double> lower,
                                    std::span<const double> upper);

struct BigMValues {
  double m1 = 0.0;
  double m2 = 1.0;
  double phi_max = 0.0;
  double phi_min = 0.0;
  double delta_z_max = 0.0;
  double lipschitz = 0.0;  // K used for m1
};

// M1 = K * |dz|max + phi_max - phi_min and M2 = 1 over the given box.
BigMValues BigM(const ConcaveTerm& term, std::span<const double> lower,
                std::span<const double> upper, const LipschitzEstimate& k);

}  // namespace iasolve

#endif  // IASOLVE_INNER_APPROX_H_
