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

#ifndef IASOLVE_LP_EXPORT_H_
#define IASOLVE_LP_EXPORT_H_

#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include "iasolve/milp_model.h"

namespace iasolve {

// Writes the model in CPLEX LP format: Minimize / Subject To / Bounds /
// Generals / Binaries / End. Names are reduced to [A-Za-z0-9_] and made
// unique; numbers use shortest round-trip formatting.
void ExportLp(const MilpModel& model, std::ostream& out);
std::string ExportLpString(const MilpModel& model);
// Throws std::runtime_error when the file cannot be written.
void ExportLpFile(const MilpModel& model, const std::filesystem::path& path);

// Maps an arbitrary name onto [A-Za-z0-9_], never starting with a digit.
std::string SanitizeLpName(std::string_view name);

// Writes every model it receives to <dir>/<prefix>_<k>.lp and then solves it
// with the built-in branch-and-bound.
std::unique_ptr<MilpBackend> MakeLpExportBackend(std::filesystem::path dir,
                                                 std::string prefix = "master");

// "builtin" or "lp-export"; nullptr for unknown names.
std::unique_ptr<MilpBackend> MakeBackend(std::string_view name,
                                         const std::filesystem::path& export_dir = ".");

}  // namespace iasolve

#endif  // IASOLVE_LP_EXPORT_H_
