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

#include <cmath>
#include <stdexcept>
#include <string>

#include "iasolve/ia_solver.h"
#include "json.hpp"

namespace iasolve {
namespace {

using nlohmann::ordered_json;

ordered_json Num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double ToNum(const ordered_json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    return std::nan("");
  }
  return j.get<double>();
}

ordered_json NumArray(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(Num(x));
  return a;
}

std::vector<double> ToNumArray(const ordered_json& j) {
  std::vector<double> out;
  for (const auto& e : j) out.push_back(ToNum(e));
  return out;
}

}  // namespace

std::string SerializeTrace(const IAResult& result) {
  ordered_json j;
  j["status"] = IAStatusName(result.status);
  j["has_incumbent"] = result.has_incumbent;
  j["incumbent"] = NumArray(result.incumbent);
  j["ub"] = Num(result.ub);
  j["lb"] = Num(result.lb);
  j["gap"] = Num(result.gap);
  j["linear_lipschitz"] = Num(result.linear_lipschitz);
  j["warnings"] = result.warnings;
  j["wall_time_sec"] = result.wall_time_sec;
  ordered_json iters = ordered_json::array();
  for (const IterationRecord& r : result.iterations) {
    ordered_json e;
    e["iteration"] = r.iteration;
    e["master_objective"] = Num(r.master_objective);
    e["z"] = NumArray(r.z);
    e["ub_candidate"] = r.ub_candidate ? Num(*r.ub_candidate) : ordered_json(nullptr);
    e["ub_best"] = Num(r.ub_best);
    e["added"] = r.added;
    e["breakpoints"] = r.breakpoints;
    e["m1"] = NumArray(r.m1);
    e["lipschitz"] = NumArray(r.lipschitz);
    e["master_rows"] = r.master_rows;
    e["master_cols"] = r.master_cols;
    e["master_binaries"] = r.master_binaries;
    e["milp_nodes"] = r.milp_nodes;
    e["wall_time_sec"] = r.wall_time_sec;
    iters.push_back(std::move(e));
  }
  j["iterations"] = std::move(iters);
  ordered_json sets = ordered_json::array();
  for (const BreakpointSet& s : result.final_sets) {
    ordered_json e;
    e["term"] = s.term_index();
    ordered_json pts = ordered_json::array();
    for (int p = 0; p < s.size(); ++p) {
      auto z = s.point(p);
      pts.push_back(NumArray(std::vector<double>(z.begin(), z.end())));
    }
    e["points"] = std::move(pts);
    e["values"] = NumArray(s.values());
    std::vector<int> created;
    for (int p = 0; p < s.size(); ++p) created.push_back(s.created_at(p));
    e["created_at"] = created;
    sets.push_back(std::move(e));
  }
  j["breakpoints"] = std::move(sets);
  return j.dump(2) + "\n";
}

IAResult ParseTrace(std::string_view json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw std::runtime_error(std::string("trace parse error: ") + e.what());
  }
  IAResult r;
  try {
    auto status = ParseIAStatus(j.at("status").get<std::string>());
    if (!status) throw std::runtime_error("unknown status in trace");
    r.status = *status;
    r.has_incumbent = j.at("has_incumbent").get<bool>();
    r.incumbent = ToNumArray(j.at("incumbent"));
    r.ub = ToNum(j.at("ub"));
    r.lb = ToNum(j.at("lb"));
    r.gap = ToNum(j.at("gap"));
    r.linear_lipschitz = ToNum(j.at("linear_lipschitz"));
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.wall_time_sec = j.at("wall_time_sec").get<double>();
    for (const auto& e : j.at("iterations")) {
      IterationRecord rec;
      rec.iteration = e.at("iteration").get<int>();
      rec.master_objective = ToNum(e.at("master_objective"));
      rec.z = ToNumArray(e.at("z"));
      if (!e.at("ub_candidate").is_null()) rec.ub_candidate = ToNum(e.at("ub_candidate"));
      rec.ub_best = ToNum(e.at("ub_best"));
      rec.added = e.at("added").get<std::vector<int>>();
      rec.breakpoints = e.at("breakpoints").get<std::vector<int>>();
      rec.m1 = ToNumArray(e.at("m1"));
      rec.lipschitz = ToNumArray(e.at("lipschitz"));
      rec.master_rows = e.at("master_rows").get<int>();
      rec.master_cols = e.at("master_cols").get<int>();
      rec.master_binaries = e.at("master_binaries").get<int>();
      rec.milp_nodes = e.at("milp_nodes").get<int64_t>();
      rec.wall_time_sec = e.at("wall_time_sec").get<double>();
      r.iterations.push_back(std::move(rec));
    }
  } catch (const ordered_json::exception& e) {
    throw std::runtime_error(std::string("malformed trace: ") + e.what());
  }
  return r;
}

}  // namespace iasolve
