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

// Command-line front end: solve, generate, oracle, bench and profile.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iasolve/bench.h"
#include "iasolve/generators.h"
#include "iasolve/ia_solver.h"
#include "iasolve/oracle.h"
#include "iasolve/problem_io.h"
#include "iasolve/profile.h"
#include "json.hpp"

namespace {

using iasolve::FormatDouble;
using nlohmann::ordered_json;

constexpr int kExitSuccess = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitLimit = 2;
constexpr int kExitError = 3;

// Numbers as JSON numbers when finite, else as "inf"/"-inf"/"nan" strings.
ordered_json Num(double v) {
  if (std::isfinite(v)) return v;
  return FormatDouble(v);
}

ordered_json PointJson(const iasolve::Problem& p, const std::vector<double>& x) {
  ordered_json out = ordered_json::object();
  for (size_t j = 0; j < x.size() && j < p.variables.size(); ++j) {
    out[p.variables[j].name] = Num(x[j]);
  }
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteText(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

iasolve::Problem LoadProblem(const std::string& path) {
  iasolve::ParsedProblem parsed = iasolve::ReadProblem(path);
  if (!parsed.diagnostics.empty()) {
    std::string msg = "problem does not validate:";
    for (const auto& d : parsed.diagnostics) msg += "\n  " + iasolve::FormatDiagnostic(d);
    throw std::invalid_argument(msg);
  }
  return std::move(parsed.problem);
}

struct SolveOptions {
  std::string problem;
  double epsilon = 0.01;
  double time_limit = 7200.0;
  int max_iterations = 10000;
  std::string init = "auto";
  std::string backend = "builtin";
  std::string export_dir = ".";
  std::string node_selection = "bestBound";
  std::string trace;
  std::string output;
};

void AddSolveFlags(CLI::App* cmd, SolveOptions& o) {
  cmd->add_option("problem", o.problem, "Problem JSON file")->required();
  cmd->add_option("--epsilon", o.epsilon, "Relative gap tolerance")
      ->envname("IA_EPSILON")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--time-limit", o.time_limit, "Wall-clock limit in seconds")
      ->envname("IA_TIME_LIMIT")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iterations", o.max_iterations, "Iteration limit")
      ->envname("IA_MAX_ITERATIONS")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--init", o.init, "Initial breakpoints")
      ->envname("IA_INIT")
      ->check(CLI::IsMember({"corners", "simplex", "auto"}));
  cmd->add_option("--backend", o.backend, "MILP backend")
      ->envname("IA_BACKEND")
      ->check(CLI::IsMember({"builtin", "lp-export"}));
  cmd->add_option("--export-dir", o.export_dir, "Directory for lp-export files")
      ->envname("IA_EXPORT_DIR");
  cmd->add_option("--node-selection", o.node_selection, "Branch-and-bound node order")
      ->envname("IA_NODE_SELECTION")
      ->check(CLI::IsMember({"bestBound", "depthFirst"}));
}

iasolve::IAParams ToParams(const SolveOptions& o) {
  iasolve::IAParams p;
  p.epsilon = o.epsilon;
  p.max_wall_time_sec = o.time_limit;
  p.max_iterations = o.max_iterations;
  p.init_mode = *iasolve::ParseInitMode(o.init);
  p.backend = o.backend;
  p.export_dir = o.export_dir;
  p.milp_params.node_selection = *iasolve::ParseNodeSelection(o.node_selection);
  p.milp_params.time_limit_sec = o.time_limit;
  return p;
}

int ExitFor(iasolve::IAStatus status) {
  switch (status) {
    case iasolve::IAStatus::kOptimal:
    case iasolve::IAStatus::kGapReached:
      return kExitSuccess;
    case iasolve::IAStatus::kInfeasible:
      return kExitInfeasible;
    case iasolve::IAStatus::kTimeLimit:
    case iasolve::IAStatus::kIterLimit:
      return kExitLimit;
  }
  return kExitError;
}

int RunSolve(const SolveOptions& o) {
  iasolve::Problem problem = LoadProblem(o.problem);
  iasolve::IAResult r = iasolve::Solve(problem, ToParams(o));
  ordered_json j;
  j["problem"] = problem.name;
  j["status"] = iasolve::IAStatusName(r.status);
  j["objective"] = r.has_incumbent ? Num(r.ub) : ordered_json(nullptr);
  j["lower_bound"] = Num(r.lb);
  j["gap"] = Num(r.gap);
  j["iterations"] = r.iterations.size();
  j["x"] = r.has_incumbent ? PointJson(problem, r.incumbent) : ordered_json(nullptr);
  j["warnings"] = r.warnings;
  j["wall_time_sec"] = r.wall_time_sec;
  WriteText(j.dump(2) + "\n", o.output);
  if (!o.trace.empty()) WriteText(iasolve::SerializeTrace(r), o.trace);
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << "\n";
  return ExitFor(r.status);
}

std::string SidecarPath(const std::string& out) {
  std::filesystem::path p(out);
  if (p.extension() == ".json") p.replace_extension();
  return p.string() + ".meta.json";
}

void WriteGenerated(const iasolve::Problem& p, const std::string& meta, const std::string& out) {
  std::string text = iasolve::SerializeProblem(p);
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  WriteText(text, out);
  WriteText(meta, SidecarPath(out));
}

int RunOracle(const std::string& path, const std::string& method, int grid, int64_t limit,
              const std::string& output) {
  iasolve::Problem problem = LoadProblem(path);
  iasolve::OracleResult r;
  if (method == "brute") {
    r = iasolve::BruteForceInteger(problem, limit);
  } else if (method == "assign") {
    r = iasolve::EnumerateAssignments(problem, limit);
  } else {
    r = iasolve::SandwichContinuous(problem, grid);
  }
  const bool feasible = r.status == iasolve::OracleStatus::kOptimal;
  ordered_json j;
  j["problem"] = problem.name;
  j["method"] = r.method;
  j["status"] = feasible ? "optimal" : "infeasible";
  j["optimum"] = feasible ? Num(r.optimum) : ordered_json(nullptr);
  j["lo"] = feasible ? Num(r.lo) : ordered_json(nullptr);
  j["hi"] = feasible ? Num(r.hi) : ordered_json(nullptr);
  ordered_json points = ordered_json::array();
  for (const auto& x : r.argmins) points.push_back(PointJson(problem, x));
  j["argmins"] = points;
  WriteText(j.dump(2) + "\n", output);
  return feasible ? kExitSuccess : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-integer concave minimization by iterative inner approximation"};
  app.require_subcommand(1);

  SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a problem JSON file");
  AddSolveFlags(solve_cmd, solve);
  solve_cmd->add_option("--trace", solve.trace, "Write the iteration trace JSON here");
  solve_cmd->add_option("-o,--output", solve.output, "Write the result JSON here");

  CLI::App* gen_cmd = app.add_subcommand("generate", "Generate a benchmark instance");
  gen_cmd->require_subcommand(1);
  iasolve::CsinkConfig csink;
  std::string csink_family = "quadratic";
  std::string csink_out;
  CLI::App* csink_cmd = gen_cmd->add_subcommand("csink", "Concave separable integer knapsack");
  csink_cmd->add_option("--n", csink.n, "Items")->check(CLI::PositiveNumber);
  csink_cmd->add_option("--m", csink.m, "Knapsack rows")->check(CLI::PositiveNumber);
  csink_cmd->add_option("--family", csink_family, "Objective family")
      ->check(CLI::IsMember({"quadratic", "cubic", "quartic", "logarithmic"}));
  csink_cmd->add_option("--r", csink.r, "Right-hand-side tightness in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  csink_cmd->add_option("--seed", csink.seed, "Seed")->envname("IA_SEED");
  csink_cmd->add_option("-o,--output", csink_out, "Problem JSON path (sidecar .meta.json)");

  iasolve::PtConfig pt;
  std::string pt_sourcing = "multiple";
  std::string pt_out;
  CLI::App* pt_cmd = gen_cmd->add_subcommand("pt", "Production-transportation");
  pt_cmd->add_option("--m", pt.m, "Sources")->check(CLI::PositiveNumber);
  pt_cmd->add_option("--n", pt.n, "Destinations")->check(CLI::PositiveNumber);
  pt_cmd->add_option("--rho", pt.rho, "Capacity tightness")->check(CLI::PositiveNumber);
  pt_cmd->add_option("--sourcing", pt_sourcing, "multiple or single")
      ->check(CLI::IsMember({"multiple", "single"}));
  pt_cmd->add_option("--seed", pt.seed, "Seed")->envname("IA_SEED");
  pt_cmd->add_option("-o,--output", pt_out, "Problem JSON path (sidecar .meta.json)");

  std::string oracle_problem;
  std::string oracle_method = "brute";
  int oracle_grid = 128;
  int64_t oracle_limit = iasolve::kOracleSizeLimit;
  std::string oracle_out;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Ground-truth optimum of a small problem");
  oracle_cmd->add_option("problem", oracle_problem, "Problem JSON file")->required();
  oracle_cmd->add_option("--method", oracle_method, "Oracle method")
      ->check(CLI::IsMember({"brute", "assign", "sandwich"}));
  oracle_cmd->add_option("--grid", oracle_grid, "Sandwich grid points")
      ->envname("IA_ORACLE_GRID")
      ->check(CLI::Range(2, 1 << 20));
  oracle_cmd->add_option("--limit", oracle_limit, "Enumeration size guard")
      ->envname("IA_ORACLE_LIMIT")
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("-o,--output", oracle_out, "Write the result JSON here");

  std::string bench_matrix;
  int bench_jobs = 1;
  double bench_scale = 1.0;
  std::string bench_out;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a benchmark matrix");
  bench_cmd->add_option("matrix", bench_matrix, "Matrix JSON file")->required();
  bench_cmd->add_option("--jobs", bench_jobs, "Worker threads")
      ->envname("IA_JOBS")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--scale", bench_scale, "Multiply recorded times by this factor")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("-o,--output", bench_out, "Records CSV path");

  std::string profile_csv;
  std::string profile_out;
  std::vector<std::string> profile_solvers;
  CLI::App* profile_cmd = app.add_subcommand("profile", "Performance profile of bench records");
  profile_cmd->add_option("records", profile_csv, "Records CSV file")->required();
  profile_cmd->add_option("--solvers", profile_solvers, "Solver ids (default: all)")
      ->delimiter(',');
  profile_cmd->add_option("-o,--output", profile_out, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitError;
  }

  try {
    if (solve_cmd->parsed()) return RunSolve(solve);
    if (csink_cmd->parsed()) {
      csink.family = *iasolve::ParseCsinkFamily(csink_family);
      WriteGenerated(iasolve::GenCsink(csink), iasolve::GeneratorMetadata(csink), csink_out);
      return kExitSuccess;
    }
    if (pt_cmd->parsed()) {
      pt.sourcing = *iasolve::ParseSourcing(pt_sourcing);
      WriteGenerated(iasolve::GenPt(pt), iasolve::GeneratorMetadata(pt), pt_out);
      return kExitSuccess;
    }
    if (oracle_cmd->parsed()) {
      return RunOracle(oracle_problem, oracle_method, oracle_grid, oracle_limit, oracle_out);
    }
    if (bench_cmd->parsed()) {
      iasolve::BenchMatrix matrix = iasolve::ParseBenchMatrix(ReadFile(bench_matrix));
      auto records = iasolve::RunBench(matrix, bench_jobs);
      if (bench_out.empty() || bench_out == "-") {
        iasolve::EmitCsv(records, std::cout, bench_scale);
      } else {
        iasolve::EmitCsv(records, std::filesystem::path(bench_out), bench_scale);
      }
      return kExitSuccess;
    }
    if (profile_cmd->parsed()) {
      auto records = iasolve::ReadCsv(std::filesystem::path(profile_csv));
      if (profile_solvers.empty()) profile_solvers = iasolve::SolverIds(records);
      auto curves = iasolve::PerformanceProfile(records, profile_solvers);
      iasolve::EmitSvg(curves, std::filesystem::path(profile_out));
      for (const auto& c : curves) {
        std::cout << c.solver << " p(0)=" << FormatDouble(c.points.front().second)
                  << " p(6)=" << FormatDouble(c.points.back().second) << "\n";
      }
      return kExitSuccess;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
