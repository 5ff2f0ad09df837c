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

#include "iasolve/lp_export.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "iasolve/branch_and_bound.h"
#include "iasolve/problem_io.h"

namespace iasolve {
namespace {

std::vector<std::string> UniqueNames(const std::vector<std::string>& raw,
                                     std::string_view fallback) {
  std::vector<std::string> out;
  std::set<std::string> used;
  for (size_t i = 0; i < raw.size(); ++i) {
    std::string base = raw[i].empty() ? std::string(fallback) + std::to_string(i)
                                      : SanitizeLpName(raw[i]);
    std::string name = base;
    for (int k = 1; used.count(name) > 0; ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    out.push_back(name);
  }
  return out;
}

std::string Number(double v) {
  if (v == kInfinity) return "inf";
  if (v == -kInfinity) return "-inf";
  return FormatDouble(v);
}

void WriteExpr(std::ostream& out, const LinearExpr& expr,
               const std::vector<std::string>& names) {
  std::map<int, double> merged;
  for (const auto& [idx, coef] : expr.terms) merged[idx] += coef;
  bool first = true;
  for (const auto& [idx, coef] : merged) {
    if (coef == 0.0) continue;
    out << (coef < 0.0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    double mag = std::abs(coef);
    if (mag != 1.0) out << Number(mag) << " ";
    out << names[idx];
    first = false;
  }
}

class LpExportBackend : public MilpBackend {
 public:
  LpExportBackend(std::filesystem::path dir, std::string prefix)
      : dir_(std::move(dir)), prefix_(std::move(prefix)) {}

  std::string_view name() const override { return "lp-export"; }

  MilpSolution Solve(const MilpModel& model, const SolveParams& params) override {
    ++count_;
    ExportLpFile(model, dir_ / (prefix_ + "_" + std::to_string(count_) + ".lp"));
    return SolveMilp(model, params);
  }

 private:
  std::filesystem::path dir_;
  std::string prefix_;
  int count_ = 0;
};

}  // namespace

std::string SanitizeLpName(std::string_view name) {
  std::string out;
  for (char c : name) {
    out += std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_';
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "v" + out;
  return out;
}

void ExportLp(const MilpModel& model, std::ostream& out) {
  std::vector<std::string> raw;
  for (const Variable& v : model.variables) raw.push_back(v.name);
  const std::vector<std::string> names = UniqueNames(raw, "x");
  std::vector<std::string> raw_rows = model.constraint_names;
  raw_rows.resize(model.constraints.size());
  const std::vector<std::string> rows = UniqueNames(raw_rows, "c");

  out << "\\ " << (model.name.empty() ? "model" : SanitizeLpName(model.name)) << "\n";
  out << "Minimize\n obj: ";
  bool has_terms = false;
  for (const auto& [idx, coef] : model.objective.terms) has_terms |= coef != 0.0;
  if (has_terms) {
    WriteExpr(out, model.objective, names);
    if (model.objective.constant != 0.0) {
      out << (model.objective.constant < 0.0 ? " - " : " + ")
          << Number(std::abs(model.objective.constant));
    }
  } else {
    out << Number(model.objective.constant);
  }
  out << "\nSubject To\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const LinearConstraint& c = model.constraints[i];
    out << " " << rows[i] << ": ";
    bool any = false;
    for (const auto& [idx, coef] : c.expr.terms) any |= coef != 0.0;
    if (any) {
      WriteExpr(out, c.expr, names);
    } else {
      // LP readers need a variable on the left-hand side.
      out << "0 " << (names.empty() ? "x0" : names[0]);
    }
    out << " " << SenseSymbol(c.sense) << " " << Number(c.rhs - c.expr.constant) << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variables[j];
    if (v.kind == VarKind::kBinary && v.lower == 0.0 && v.upper == 1.0) continue;
    if (v.lower == -kInfinity && v.upper == kInfinity) {
      out << " " << names[j] << " free\n";
    } else if (v.lower == v.upper) {
      out << " " << names[j] << " = " << Number(v.lower) << "\n";
    } else {
      out << " " << Number(v.lower) << " <= " << names[j] << " <= " << Number(v.upper) << "\n";
    }
  }
  std::ostringstream generals;
  std::ostringstream binaries;
  for (int j = 0; j < model.num_variables(); ++j) {
    VarKind kind = model.variables[j].kind;
    if (kind == VarKind::kInteger) generals << " " << names[j] << "\n";
    if (kind == VarKind::kBinary) binaries << " " << names[j] << "\n";
  }
  out << "Generals\n" << generals.str();
  out << "Binaries\n" << binaries.str();
  out << "End\n";
}

std::string ExportLpString(const MilpModel& model) {
  std::ostringstream out;
  ExportLp(model, out);
  return out.str();
}

void ExportLpFile(const MilpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  ExportLp(model, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::unique_ptr<MilpBackend> MakeLpExportBackend(std::filesystem::path dir,
                                                 std::string prefix) {
  return std::make_unique<LpExportBackend>(std::move(dir), std::move(prefix));
}

std::unique_ptr<MilpBackend> MakeBackend(std::string_view name,
                                         const std::filesystem::path& export_dir) {
  if (name == "builtin") return MakeBuiltinBackend();
  if (name == "lp-export") return MakeLpExportBackend(export_dir);
  return nullptr;
}

}  // namespace iasolve
