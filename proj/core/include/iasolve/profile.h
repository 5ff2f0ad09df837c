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

#ifndef IASOLVE_PROFILE_H_
#define IASOLVE_PROFILE_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "iasolve/bench.h"

namespace iasolve {

struct ProfileCurve {
  std::string solver;
  std::vector<std::pair<double, double>> points;  // (tau, p_s(tau)), tau ascending
};

// tau grid 0, 0.1, ..., 6.
std::vector<double> ProfileTauGrid();

// r[instance][solver] = t / min over solvers of t. Unsolved runs and
// instances no solver solved give +inf; a zero best time gives 1 for ties
// and +inf otherwise. Throws std::invalid_argument listing every missing or
// repeated (instance, solver) pair, or when fewer than 2 solvers are given.
std::map<std::string, std::map<std::string, double>> PerformanceRatios(
    const std::vector<BenchRecord>& records, const std::vector<std::string>& solvers);

// p_s(tau) = fraction of instances with r <= 2^tau, on ProfileTauGrid().
std::vector<ProfileCurve> PerformanceProfile(const std::vector<BenchRecord>& records,
                                             const std::vector<std::string>& solvers);

// Solver ids in order of first appearance.
std::vector<std::string> SolverIds(const std::vector<BenchRecord>& records);

// Step plot with tau on x, p_s on y, one polyline per solver and a legend.
void EmitSvg(const std::vector<ProfileCurve>& curves, std::ostream& out);
void EmitSvg(const std::vector<ProfileCurve>& curves, const std::filesystem::path& path);

}  // namespace iasolve

#endif  // IASOLVE_PROFILE_H_
