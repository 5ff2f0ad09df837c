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

#include "iasolve/problem_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace iasolve {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw ProblemParseError(path + ": " + what);
}

const Json& Require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) Fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path, std::string("missing required key \"") + key + "\"");
  return *it;
}

double ReadNumber(const Json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  // Non-finite bounds are written as strings.
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  Fail(path, "expected a number");
}

int ReadIndex(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) Fail(path, "expected an integer index");
  return v.get<int>();
}

Json WriteNumber(double v) {
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  return Json(v);
}

LinearExpr ReadExpr(const Json& obj, const std::string& path) {
  LinearExpr expr;
  const Json& terms = Require(obj, "terms", path);
  if (!terms.is_array()) Fail(path + "/terms", "expected an array");
  for (size_t i = 0; i < terms.size(); ++i) {
    std::string tp = path + "/terms/" + std::to_string(i);
    const Json& pair = terms[i];
    if (!pair.is_array() || pair.size() != 2) Fail(tp, "expected [index, coefficient]");
    expr.terms.emplace_back(ReadIndex(pair[0], tp + "/0"), ReadNumber(pair[1], tp + "/1"));
  }
  if (auto it = obj.find("constant"); it != obj.end()) {
    expr.constant = ReadNumber(*it, path + "/constant");
  }
  return expr;
}

Json WriteTerms(const LinearExpr& expr) {
  Json terms = Json::array();
  for (const auto& [idx, coef] : expr.terms) terms.push_back(Json::array({idx, coef}));
  return terms;
}

double Param(const Json& params, const char* key, const std::string& path) {
  return ReadNumber(Require(params, key, path), path + "/" + key);
}

ConcaveFunction ReadFunction(const Json& obj, const std::string& path) {
  const Json& fam = Require(obj, "family", path);
  if (!fam.is_string()) Fail(path + "/family", "expected a string");
  const std::string& family = fam.get_ref<const std::string&>();
  const Json& params = Require(obj, "params", path);
  std::string pp = path + "/params";
  if (family == "poly4") {
    return ConcaveFunction(Poly4{Param(params, "c", pp), Param(params, "d", pp),
                                 Param(params, "e", pp), Param(params, "h", pp)});
  }
  if (family == "log_linear") {
    return ConcaveFunction(LogLinear{Param(params, "c", pp), Param(params, "d", pp)});
  }
  if (family == "sqrt_scaled") {
    return ConcaveFunction(SqrtScaled{Param(params, "gamma", pp)});
  }
  if (family == "power_scaled") {
    return ConcaveFunction(PowerScaled{Param(params, "a", pp), Param(params, "p", pp)});
  }
  if (family == "tabulated") {
    const Json& pts = Require(params, "points", pp);
    if (!pts.is_array()) Fail(pp + "/points", "expected an array");
    Tabulated tab;
    for (size_t i = 0; i < pts.size(); ++i) {
      std::string tp = pp + "/points/" + std::to_string(i);
      if (!pts[i].is_array() || pts[i].size() != 2) Fail(tp, "expected [point, value]");
      tab.points.emplace_back(ReadNumber(pts[i][0], tp), ReadNumber(pts[i][1], tp));
    }
    return ConcaveFunction(std::move(tab));
  }
  Fail(path + "/family", "unknown family \"" + family + "\"");
}

Json WriteParams(const ConcaveFunction& fn) {
  Json params = Json::object();
  std::visit(
      [&params](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Poly4>) {
          params["c"] = p.c;
          params["d"] = p.d;
          params["e"] = p.e;
          params["h"] = p.h;
        } else if constexpr (std::is_same_v<T, LogLinear>) {
          params["c"] = p.c;
          params["d"] = p.d;
        } else if constexpr (std::is_same_v<T, SqrtScaled>) {
          params["gamma"] = p.gamma;
        } else if constexpr (std::is_same_v<T, PowerScaled>) {
          params["a"] = p.a;
          params["p"] = p.p;
        } else {
          Json pts = Json::array();
          for (const auto& [x, y] : p.points) pts.push_back(Json::array({x, y}));
          params["points"] = std::move(pts);
        }
      },
      fn.params());
  return params;
}

ConcaveTerm ReadTerm(const Json& obj, const std::string& path) {
  ConcaveTerm term;
  const Json& vars = Require(obj, "vars", path);
  if (!vars.is_array()) Fail(path + "/vars", "expected an array");
  for (size_t i = 0; i < vars.size(); ++i) {
    term.var_indices.push_back(ReadIndex(vars[i], path + "/vars/" + std::to_string(i)));
  }
  term.function = ReadFunction(obj, path);
  return term;
}

Json WriteTerm(const ConcaveTerm& term) {
  Json obj = Json::object();
  obj["vars"] = term.var_indices;
  obj["family"] = std::string(term.function.family_name());
  obj["params"] = WriteParams(term.function);
  return obj;
}

Problem FromJson(const Json& root) {
  Problem p;
  if (!root.is_object()) Fail("", "top-level value must be an object");
  if (auto it = root.find("name"); it != root.end() && it->is_string()) {
    p.name = it->get<std::string>();
  }
  const Json& vars = Require(root, "variables", "");
  if (!vars.is_array()) Fail("/variables", "expected an array");
  for (size_t j = 0; j < vars.size(); ++j) {
    std::string vp = "/variables/" + std::to_string(j);
    Variable v;
    if (auto it = vars[j].find("name"); it != vars[j].end() && it->is_string()) {
      v.name = it->get<std::string>();
    } else {
      v.name = "x" + std::to_string(j);
    }
    v.lower = ReadNumber(Require(vars[j], "lower", vp), vp + "/lower");
    v.upper = ReadNumber(Require(vars[j], "upper", vp), vp + "/upper");
    const Json& kind = Require(vars[j], "kind", vp);
    auto parsed = kind.is_string() ? ParseVarKind(kind.get<std::string>()) : std::nullopt;
    if (!parsed) Fail(vp + "/kind", "expected continuous, integer or binary");
    v.kind = *parsed;
    p.variables.push_back(std::move(v));
  }
  if (auto it = root.find("objective_linear"); it != root.end()) {
    p.objective_linear = ReadExpr(*it, "/objective_linear");
  }
  if (auto it = root.find("concave_terms"); it != root.end()) {
    if (!it->is_array()) Fail("/concave_terms", "expected an array");
    for (size_t t = 0; t < it->size(); ++t) {
      p.concave_terms.push_back(ReadTerm((*it)[t], "/concave_terms/" + std::to_string(t)));
    }
  }
  if (auto it = root.find("linear_constraints"); it != root.end()) {
    if (!it->is_array()) Fail("/linear_constraints", "expected an array");
    for (size_t i = 0; i < it->size(); ++i) {
      std::string rp = "/linear_constraints/" + std::to_string(i);
      const Json& row = (*it)[i];
      LinearConstraint c;
      c.expr = ReadExpr(row, rp);
      const Json& sense = Require(row, "sense", rp);
      auto parsed = sense.is_string() ? ParseSense(sense.get<std::string>()) : std::nullopt;
      if (!parsed) Fail(rp + "/sense", "expected <=, >= or =");
      c.sense = *parsed;
      c.rhs = ReadNumber(Require(row, "rhs", rp), rp + "/rhs");
      p.linear_constraints.push_back(std::move(c));
    }
  }
  if (auto it = root.find("concave_constraints"); it != root.end()) {
    if (!it->is_array()) Fail("/concave_constraints", "expected an array");
    for (size_t i = 0; i < it->size(); ++i) {
      std::string rp = "/concave_constraints/" + std::to_string(i);
      const Json& row = (*it)[i];
      ConcaveConstraint c;
      c.bound_var = ReadIndex(Require(row, "bound_var", rp), rp + "/bound_var");
      c.term = ReadTerm(Require(row, "term", rp), rp + "/term");
      if (auto m = row.find("big_m"); m != row.end()) c.big_m = ReadNumber(*m, rp + "/big_m");
      p.concave_constraints.push_back(std::move(c));
    }
  }
  return p;
}

Json ToJson(const Problem& p) {
  Json root = Json::object();
  root["name"] = p.name;
  Json vars = Json::array();
  for (const Variable& v : p.variables) {
    Json obj = Json::object();
    obj["name"] = v.name;
    obj["lower"] = WriteNumber(v.lower);
    obj["upper"] = WriteNumber(v.upper);
    obj["kind"] = std::string(VarKindName(v.kind));
    vars.push_back(std::move(obj));
  }
  root["variables"] = std::move(vars);
  Json obj_lin = Json::object();
  obj_lin["terms"] = WriteTerms(p.objective_linear);
  obj_lin["constant"] = p.objective_linear.constant;
  root["objective_linear"] = std::move(obj_lin);
  Json terms = Json::array();
  for (const auto& t : p.concave_terms) terms.push_back(WriteTerm(t));
  root["concave_terms"] = std::move(terms);
  Json rows = Json::array();
  for (const auto& c : p.linear_constraints) {
    Json obj = Json::object();
    obj["terms"] = WriteTerms(c.expr);
    if (c.expr.constant != 0.0) obj["constant"] = c.expr.constant;
    obj["sense"] = std::string(SenseSymbol(c.sense));
    obj["rhs"] = c.rhs;
    rows.push_back(std::move(obj));
  }
  root["linear_constraints"] = std::move(rows);
  Json crows = Json::array();
  for (const auto& c : p.concave_constraints) {
    Json obj = Json::object();
    obj["bound_var"] = c.bound_var;
    obj["term"] = WriteTerm(c.term);
    if (c.big_m) obj["big_m"] = *c.big_m;
    crows.push_back(std::move(obj));
  }
  root["concave_constraints"] = std::move(crows);
  return root;
}

}  // namespace

ParsedProblem ParseProblem(std::string_view json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into line/column.
    size_t line = 1;
    size_t col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < json_text.size(); ++i) {
      if (json_text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ProblemParseError("line " + std::to_string(line) + ", column " +
                            std::to_string(col) + ": " + e.what());
  }
  ParsedProblem out;
  try {
    out.problem = FromJson(root);
  } catch (const nlohmann::json::exception& e) {
    throw ProblemParseError(e.what());
  }
  out.diagnostics = Validate(out.problem);
  return out;
}

ParsedProblem ReadProblem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return ParseProblem(buf.str());
  } catch (const ProblemParseError& e) {
    throw ProblemParseError(path.string() + ": " + e.what());
  }
}

std::string SerializeProblem(const Problem& problem) {
  return ToJson(problem).dump(2) + "\n";
}

void WriteProblem(const Problem& problem, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << SerializeProblem(problem);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace iasolve
