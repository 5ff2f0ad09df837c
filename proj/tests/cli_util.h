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

#ifndef IASOLVE_TESTS_CLI_UTIL_H_
#define IASOLVE_TESTS_CLI_UTIL_H_

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace iasolve::testing {

// Runs the command-line tool with `args`, discarding its terminal output.
// Returns the exit code, or -1 when the process did not exit normally.
inline int RunCli(const std::string& args) {
  std::string cmd = std::string("\"") + IASOLVE_CLI + "\" " + args + " >/dev/null 2>&1";
  int raw = std::system(cmd.c_str());
  if (raw == -1 || !WIFEXITED(raw)) return -1;
  return WEXITSTATUS(raw);
}

inline std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// JSON text with every "wall_time_sec" member removed, re-dumped.
inline std::string WithoutTiming(const std::string& text) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);
  auto strip = [](auto& self, nlohmann::ordered_json& node) -> void {
    if (node.is_object()) {
      node.erase("wall_time_sec");
      for (auto& [k, v] : node.items()) self(self, v);
    } else if (node.is_array()) {
      for (auto& v : node) self(self, v);
    }
  };
  strip(strip, j);
  return j.dump();
}

// Bench CSV text with the time column blanked.
inline std::string CsvWithoutTiming(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    size_t first = line.find(',');
    size_t second = first == std::string::npos ? first : line.find(',', first + 1);
    size_t third = second == std::string::npos ? second : line.find(',', second + 1);
    if (third != std::string::npos) line.erase(second + 1, third - second - 1);
    out += line + "\n";
  }
  return out;
}

inline std::filesystem::path FreshDir(const std::string& name) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace iasolve::testing

#endif  // IASOLVE_TESTS_CLI_UTIL_H_
