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

#ifndef IASOLVE_PROBLEM_IO_H_
#define IASOLVE_PROBLEM_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iasolve/model.h"

namespace iasolve {

// Malformed input. what() names the line/column for syntax errors and the
// JSON path for schema errors.
class ProblemParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedProblem {
  Problem problem;
  std::vector<Diagnostic> diagnostics;  // from Validate()
};

ParsedProblem ParseProblem(std::string_view json_text);
ParsedProblem ReadProblem(const std::filesystem::path& path);

// Canonical JSON: fixed field order, shortest round-trip floats, two-space
// indentation, trailing newline.
std::string SerializeProblem(const Problem& problem);
void WriteProblem(const Problem& problem, const std::filesystem::path& path);

// Shortest decimal string that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace iasolve

#endif  // IASOLVE_PROBLEM_IO_H_
