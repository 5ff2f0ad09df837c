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

#include "iasolve/bench.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "iasolve/problem_io.h"
#include "json.hpp"

namespace iasolve {
namespace {

using nlohmann::json;

struct Job {
  Problem problem;
  std::string hash;
  size_t solver = 0;
};

template <typename T>
T Get(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  return it->get<T>();
}

BenchInstanceSpec ParseInstance(const json& j) {
  BenchInstanceSpec spec;
  std::string gen = Get<std::string>(j, "generator", "");
  spec.repetitions = Get<int>(j, "repetitions", 1);
  if (spec.repetitions < 0) throw std::invalid_argument("repetitions must be >= 0");
  if (gen == "csink") {
    CsinkConfig c;
    c.n = Get<int>(j, "n", c.n);
    c.m = Get<int>(j, "m", c.m);
    c.r = Get<double>(j, "r", c.r);
    c.seed = Get<uint64_t>(j, "seed", c.seed);
    std::string family = Get<std::string>(j, "family", "quadratic");
    auto f = ParseCsinkFamily(family);
    if (!f) throw std::invalid_argument("unknown csink family '" + family + "'");
    c.family = *f;
    spec.config = c;
  } else if (gen == "pt") {
    PtConfig c;
    c.m = Get<int>(j, "m", c.m);
    c.n = Get<int>(j, "n", c.n);
    c.rho = Get<double>(j, "rho", c.rho);
    c.seed = Get<uint64_t>(j, "seed", c.seed);
    std::string sourcing = Get<std::string>(j, "sourcing", "multiple");
    auto s = ParseSourcing(sourcing);
    if (!s) throw std::invalid_argument("unknown sourcing '" + sourcing + "'");
    c.sourcing = *s;
    spec.config = c;
  } else {
    throw std::invalid_argument("unknown generator '" + gen + "'");
  }
  return spec;
}

BenchSolverSpec ParseSolver(const json& j) {
  BenchSolverSpec spec;
  spec.id = Get<std::string>(j, "id", "");
  if (spec.id.empty()) throw std::invalid_argument("solver without id");
  IAParams& p = spec.params;
  p.epsilon = Get<double>(j, "epsilon", p.epsilon);
  p.max_wall_time_sec = Get<double>(j, "time_limit", p.max_wall_time_sec);
  p.max_iterations = Get<int>(j, "max_iterations", p.max_iterations);
  std::string init = Get<std::string>(j, "init", "auto");
  auto mode = ParseInitMode(init);
  if (!mode) throw std::invalid_argument("unknown init mode '" + init + "'");
  p.init_mode = *mode;
  std::string sel = Get<std::string>(j, "node_selection", "bestBound");
  auto ns = ParseNodeSelection(sel);
  if (!ns) throw std::invalid_argument("unknown node selection '" + sel + "'");
  p.milp_params.node_selection = *ns;
  p.milp_params.relative_gap = Get<double>(j, "milp_gap", p.milp_params.relative_gap);
  p.milp_params.time_limit_sec = p.max_wall_time_sec;
  return spec;
}

Problem Generate(const std::variant<CsinkConfig, PtConfig>& config, int rep) {
  if (const auto* c = std::get_if<CsinkConfig>(&config)) {
    CsinkConfig copy = *c;
    copy.seed += rep;
    return GenCsink(copy);
  }
  PtConfig copy = std::get<PtConfig>(config);
  copy.seed += rep;
  return GenPt(copy);
}

BenchRecord RunOne(const Job& job, const BenchSolverSpec& solver) {
  BenchRecord r;
  r.instance = job.problem.name;
  r.solver = solver.id;
  r.instance_hash = job.hash;
  auto start = std::chrono::steady_clock::now();
  try {
    IAResult res = Solve(job.problem, solver.params);
    r.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.status = std::string(IAStatusName(res.status));
    r.gap = res.gap;
    r.iterations = res.iterations.size();
    for (const IterationRecord& it : res.iterations) r.nodes += it.milp_nodes;
    r.ub = res.ub;
    r.lb = res.lb;
  } catch (const std::exception&) {
    r.status = "error";
    r.gap = std::numeric_limits<double>::infinity();
  }
  if (!r.solved()) r.time_s = std::numeric_limits<double>::infinity();
  return r;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseNumber(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

}  // namespace

bool BenchRecord::solved() const {
  return status == "optimal" || status == "gapReached" || status == "infeasible";
}

std::string HashHex(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

BenchMatrix ParseBenchMatrix(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("matrix JSON: ") + e.what());
  }
  BenchMatrix m;
  try {
    for (const json& inst : j.at("instances")) m.instances.push_back(ParseInstance(inst));
    for (const json& s : j.at("solvers")) m.solvers.push_back(ParseSolver(s));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("matrix JSON: ") + e.what());
  }
  if (m.solvers.empty()) throw std::invalid_argument("matrix lists no solvers");
  for (size_t a = 0; a < m.solvers.size(); ++a) {
    for (size_t b = 0; b < a; ++b) {
      if (m.solvers[a].id == m.solvers[b].id) {
        throw std::invalid_argument("duplicate solver id '" + m.solvers[a].id + "'");
      }
    }
  }
  return m;
}

std::vector<BenchRecord> RunBench(const BenchMatrix& matrix, int jobs) {
  std::vector<Job> work;
  for (const BenchInstanceSpec& spec : matrix.instances) {
    for (int rep = 0; rep < spec.repetitions; ++rep) {
      Problem p = Generate(spec.config, rep);
      std::string hash = HashHex(SerializeProblem(p));
      for (size_t s = 0; s < matrix.solvers.size(); ++s) work.push_back({p, hash, s});
    }
  }
  std::vector<BenchRecord> records(work.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < work.size(); i = next++) {
      records[i] = RunOne(work[i], matrix.solvers[work[i].solver]);
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(work.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  std::vector<size_t> order(records.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (records[a].instance != records[b].instance) return records[a].instance < records[b].instance;
    return work[a].solver < work[b].solver;
  });
  std::vector<BenchRecord> sorted;
  sorted.reserve(records.size());
  for (size_t i : order) sorted.push_back(std::move(records[i]));
  return sorted;
}

void EmitCsv(const std::vector<BenchRecord>& records, std::ostream& out, double time_scale) {
  out << kCsvHeader << "\n";
  for (const BenchRecord& r : records) {
    out << r.instance << "," << r.solver << "," << FormatDouble(r.time_s * time_scale) << ","
        << r.status << "," << FormatDouble(r.gap) << "," << r.iterations << "," << r.nodes
        << "\n";
  }
}

void EmitCsv(const std::vector<BenchRecord>& records, const std::filesystem::path& path,
             double time_scale) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  EmitCsv(records, out, time_scale);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<BenchRecord> ReadCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("CSV header must be '" + std::string(kCsvHeader) + "'");
  }
  std::vector<BenchRecord> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> cells = SplitCsv(line);
    if (cells.size() != 7) {
      throw std::runtime_error("CSV row " + std::to_string(row) + ": expected 7 fields");
    }
    BenchRecord r;
    try {
      r.instance = cells[0];
      r.solver = cells[1];
      r.time_s = ParseNumber(cells[2]);
      r.status = cells[3];
      r.gap = ParseNumber(cells[4]);
      r.iterations = std::stoi(cells[5]);
      r.nodes = std::stoll(cells[6]);
    } catch (const std::exception&) {
      throw std::runtime_error("CSV row " + std::to_string(row) + ": bad number");
    }
    if (std::isnan(r.time_s) || r.time_s < 0.0) {
      throw std::runtime_error("CSV row " + std::to_string(row) + ": time must be >= 0");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BenchRecord> ReadCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return ReadCsv(in);
}

}  // namespace iasolve
