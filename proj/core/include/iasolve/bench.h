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

#ifndef IASOLVE_BENCH_H_
#define IASOLVE_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iasolve/generators.h"
#include "iasolve/ia_solver.h"

namespace iasolve {

// One (instance, solver) run. Failed runs keep time_s = +inf for profiles.
struct BenchRecord {
  std::string instance;
  std::string solver;
  double time_s = 0.0;
  std::string status;  // IAStatus name, or "error"
  double gap = 0.0;
  int iterations = 0;
  int64_t nodes = 0;  // branch-and-bound nodes over all masters
  std::string instance_hash;  // FNV-1a of the serialized problem
  double ub = 0.0;
  double lb = 0.0;

  // optimal, gapReached and infeasible count as solved.
  bool solved() const;
};

struct BenchInstanceSpec {
  std::variant<CsinkConfig, PtConfig> config;
  int repetitions = 1;  // seeds config.seed, config.seed + 1, ...
};

struct BenchSolverSpec {
  std::string id;
  IAParams params;
};

struct BenchMatrix {
  std::vector<BenchInstanceSpec> instances;
  std::vector<BenchSolverSpec> solvers;
};

// Matrix JSON:
//   {"instances": [{"generator": "csink", "n": 30, "m": 10,
//                   "family": "quadratic", "r": 0.6, "seed": 1,
//                   "repetitions": 10}, ...],
//    "solvers": [{"id": "ia", "epsilon": 0.01, "time_limit": 600,
//                 "max_iterations": 10000, "init": "auto",
//                 "node_selection": "bestBound"}, ...]}
// Throws std::invalid_argument on a malformed spec.
BenchMatrix ParseBenchMatrix(std::string_view json_text);

// Runs every solver on every instance with `jobs` worker threads. Records
// are ordered by instance id, then solver order in the matrix.
std::vector<BenchRecord> RunBench(const BenchMatrix& matrix, int jobs = 1);

// Times are multiplied by `time_scale` when written.
void EmitCsv(const std::vector<BenchRecord>& records, std::ostream& out,
             double time_scale = 1.0);
void EmitCsv(const std::vector<BenchRecord>& records, const std::filesystem::path& path,
             double time_scale = 1.0);

// Reads the columns written by EmitCsv. Throws std::runtime_error on a bad
// header or row.
std::vector<BenchRecord> ReadCsv(std::istream& in);
std::vector<BenchRecord> ReadCsv(const std::filesystem::path& path);

inline constexpr std::string_view kCsvHeader =
    "instance,solver,time_s,status,gap,iterations,nodes";

// 64-bit FNV-1a as 16 hex digits.
std::string HashHex(std::string_view bytes);

}  // namespace iasolve

#endif  // IASOLVE_BENCH_H_
