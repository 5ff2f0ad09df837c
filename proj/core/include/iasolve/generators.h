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

#ifndef IASOLVE_GENERATORS_H_
#define IASOLVE_GENERATORS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "iasolve/model.h"

namespace iasolve {

inline constexpr std::string_view kGeneratorVersion = "1";

enum class CsinkFamily { kQuadratic, kCubic, kQuartic, kLogarithmic };

std::string_view CsinkFamilyName(CsinkFamily family);
std::optional<CsinkFamily> ParseCsinkFamily(std::string_view name);

// Concave separable integer knapsack: min sum_j phi_j(x_j) s.t. A x <= b,
// x integer in [1, 5].
struct CsinkConfig {
  int n = 30;  // items
  int m = 10;  // knapsack rows
  CsinkFamily family = CsinkFamily::kQuadratic;
  double r = 0.6;
  uint64_t seed = 1;
};

enum class Sourcing { kMultiple, kSingle };

std::string_view SourcingName(Sourcing sourcing);
std::optional<Sourcing> ParseSourcing(std::string_view name);

// Production-transportation with gamma_i sqrt(y_i) production cost.
struct PtConfig {
  int m = 5;     // sources
  int n = 25;    // destinations
  double rho = 0.6;  // capacity tightness
  Sourcing sourcing = Sourcing::kMultiple;
  uint64_t seed = 1;
};

inline constexpr double kPtCapacity = 200.0;

// Draw order: A row-major, then objective coefficients by ascending j.
// b is computed, not drawn. Throws std::invalid_argument on a bad config.
Problem GenCsink(const CsinkConfig& cfg);

// Draw order: gamma by source, then c row-major. Single sourcing may be
// infeasible; the instance is returned regardless.
Problem GenPt(const PtConfig& cfg);

// d_j = ceil(rho * m * 200 / n).
double PtDemand(const PtConfig& cfg);

// True when total capacity covers total demand.
bool PtCapacityCovers(const PtConfig& cfg);

// Sidecar JSON: generator name and version, seed, and the full config.
std::string GeneratorMetadata(const CsinkConfig& cfg);
std::string GeneratorMetadata(const PtConfig& cfg);

}  // namespace iasolve

#endif  // IASOLVE_GENERATORS_H_
