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

#include "iasolve/generators.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "iasolve/random.h"
#include "json.hpp"

namespace iasolve {

std::string_view CsinkFamilyName(CsinkFamily family) {
  switch (family) {
    case CsinkFamily::kQuadratic:
      return "quadratic";
    case CsinkFamily::kCubic:
      return "cubic";
    case CsinkFamily::kQuartic:
      return "quartic";
    case CsinkFamily::kLogarithmic:
      return "logarithmic";
  }
  return "unknown";
}

std::optional<CsinkFamily> ParseCsinkFamily(std::string_view name) {
  for (CsinkFamily f : {CsinkFamily::kQuadratic, CsinkFamily::kCubic, CsinkFamily::kQuartic,
                        CsinkFamily::kLogarithmic}) {
    if (CsinkFamilyName(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view SourcingName(Sourcing sourcing) {
  return sourcing == Sourcing::kMultiple ? "multiple" : "single";
}

std::optional<Sourcing> ParseSourcing(std::string_view name) {
  if (name == "multiple") return Sourcing::kMultiple;
  if (name == "single") return Sourcing::kSingle;
  return std::nullopt;
}

Problem GenCsink(const CsinkConfig& cfg) {
  if (cfg.n < 1 || cfg.m < 1) throw std::invalid_argument("csink needs n >= 1 and m >= 1");
  if (!(cfg.r >= 0.0 && cfg.r <= 1.0)) throw std::invalid_argument("csink needs r in [0, 1]");
  constexpr double kLower = 1.0;
  constexpr double kUpper = 5.0;
  Problem p;
  p.name = "csink_" + std::string(CsinkFamilyName(cfg.family)) + "_n" + std::to_string(cfg.n) +
           "_m" + std::to_string(cfg.m) + "_s" + std::to_string(cfg.seed);
  for (int j = 0; j < cfg.n; ++j) {
    p.variables.push_back({"x" + std::to_string(j + 1), kLower, kUpper, VarKind::kInteger});
  }
  Rng a_rng(cfg.seed, "A");
  for (int i = 0; i < cfg.m; ++i) {
    LinearExpr row;
    double at_lower = 0.0;
    double at_upper = 0.0;
    for (int j = 0; j < cfg.n; ++j) {
      double a = a_rng.Uniform(-20.0, -10.0);
      row.terms.emplace_back(j, a);
      at_lower += a * kLower;
      at_upper += a * kUpper;
    }
    double b = at_lower + cfg.r * (at_upper - at_lower);
    p.linear_constraints.push_back({std::move(row), Sense::kLessEqual, b});
  }
  Rng obj(cfg.seed, "objective");
  for (int j = 0; j < cfg.n; ++j) {
    FamilyParams params;
    switch (cfg.family) {
      case CsinkFamily::kQuadratic: {
        double e = obj.Uniform(-15.0, -1.0);
        double h = obj.Uniform(-5.0, 5.0);
        params = Poly4{0.0, 0.0, e, h};
        break;
      }
      case CsinkFamily::kCubic: {
        double d = obj.UniformOpen(-1.0, 0.0);
        double e = obj.Uniform(-15.0, -1.0);
        double h = obj.Uniform(-5.0, 5.0);
        params = Poly4{0.0, d, e, h};
        break;
      }
      case CsinkFamily::kQuartic: {
        double c = obj.UniformOpen(-1.0, 0.0);
        double d = obj.UniformOpen(-5.0, 0.0);
        double e = obj.Uniform(-15.0, -1.0);
        double h = obj.Uniform(-5.0, 5.0);
        params = Poly4{c, d, e, h};
        break;
      }
      case CsinkFamily::kLogarithmic: {
        double c = obj.UniformOpen(0.0, 1.0);
        double d = obj.Uniform(-20.0, -10.0);
        params = LogLinear{c, d};
        break;
      }
    }
    p.concave_terms.push_back({{j}, ConcaveFunction(params)});
  }
  return p;
}

double PtDemand(const PtConfig& cfg) {
  // The small offset keeps ceil() from jumping on representation error.
  return std::ceil(cfg.rho * cfg.m * kPtCapacity / cfg.n - 1e-9);
}

bool PtCapacityCovers(const PtConfig& cfg) {
  return cfg.m * kPtCapacity >= cfg.n * PtDemand(cfg);
}

Problem GenPt(const PtConfig& cfg) {
  if (cfg.m < 1 || cfg.n < 1) throw std::invalid_argument("pt needs m >= 1 and n >= 1");
  if (!(cfg.rho > 0.0)) throw std::invalid_argument("pt needs rho > 0");
  const int m = cfg.m;
  const int n = cfg.n;
  const double demand = PtDemand(cfg);
  Rng gamma_rng(cfg.seed, "gamma");
  std::vector<double> gamma(m);
  for (int i = 0; i < m; ++i) gamma[i] = static_cast<double>(gamma_rng.UniformInt(10, 20));
  Rng cost_rng(cfg.seed, "cost");
  std::vector<double> cost(static_cast<size_t>(m) * n);
  for (double& c : cost) c = static_cast<double>(cost_rng.UniformInt(1, 10));

  const bool single = cfg.sourcing == Sourcing::kSingle;
  Problem p;
  char rho[32];
  std::snprintf(rho, sizeof(rho), "%g", cfg.rho);
  p.name = "pt_" + std::string(SourcingName(cfg.sourcing)) + "_m" + std::to_string(m) + "_n" +
           std::to_string(n) + "_rho" + rho + "_s" + std::to_string(cfg.seed);
  auto x_index = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      std::string name = "x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      if (single) {
        p.variables.push_back({name, 0.0, 1.0, VarKind::kBinary});
      } else {
        p.variables.push_back({name, 0.0, kPtCapacity, VarKind::kContinuous});
      }
    }
  }
  const int y0 = m * n;
  for (int i = 0; i < m; ++i) {
    p.variables.push_back({"y_" + std::to_string(i + 1), 0.0, kPtCapacity, VarKind::kContinuous});
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      double coef = cost[x_index(i, j)] * (single ? demand : 1.0);
      p.objective_linear.terms.emplace_back(x_index(i, j), coef);
    }
  }
  for (int i = 0; i < m; ++i) {
    p.concave_terms.push_back({{y0 + i}, ConcaveFunction(SqrtScaled{gamma[i]})});
  }
  // Shipments out of a source are covered by its production.
  for (int i = 0; i < m; ++i) {
    LinearExpr row;
    for (int j = 0; j < n; ++j) row.terms.emplace_back(x_index(i, j), single ? demand : 1.0);
    row.terms.emplace_back(y0 + i, -1.0);
    p.linear_constraints.push_back({std::move(row), Sense::kLessEqual, 0.0});
  }
  // Demand (multiple) or assignment cover (single) at every destination.
  for (int j = 0; j < n; ++j) {
    LinearExpr row;
    for (int i = 0; i < m; ++i) row.terms.emplace_back(x_index(i, j), 1.0);
    p.linear_constraints.push_back({std::move(row), Sense::kGreaterEqual, single ? 1.0 : demand});
  }
  return p;
}

std::string GeneratorMetadata(const CsinkConfig& cfg) {
  nlohmann::ordered_json j;
  j["generator"] = "csink";
  j["version"] = kGeneratorVersion;
  j["seed"] = cfg.seed;
  j["config"] = {{"n", cfg.n},
                 {"m", cfg.m},
                 {"family", CsinkFamilyName(cfg.family)},
                 {"r", cfg.r}};
  j["draw_order"] = {"A row-major", "objective coefficients by ascending j"};
  return j.dump(2) + "\n";
}

std::string GeneratorMetadata(const PtConfig& cfg) {
  nlohmann::ordered_json j;
  j["generator"] = "pt";
  j["version"] = kGeneratorVersion;
  j["seed"] = cfg.seed;
  j["config"] = {{"m", cfg.m},
                 {"n", cfg.n},
                 {"rho", cfg.rho},
                 {"sourcing", SourcingName(cfg.sourcing)},
                 {"capacity", kPtCapacity},
                 {"demand", PtDemand(cfg)}};
  j["capacity_covers_demand"] = PtCapacityCovers(cfg);
  j["draw_order"] = {"gamma by source", "c row-major"};
  return j.dump(2) + "\n";
}

}  // namespace iasolve
