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

#ifndef IASOLVE_RANDOM_H_
#define IASOLVE_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace iasolve {

// One step of SplitMix64; advances state.
uint64_t SplitMix64(uint64_t& state);

// Seed of the stream named `block` under a master seed: SplitMix64 applied
// to seed XOR FNV-1a(block).
uint64_t StreamSeed(uint64_t seed, std::string_view block);

// A named stream of std::mt19937_64 with portable real and integer
// mappings (the standard distributions are implementation defined).
class Rng {
 public:
  Rng(uint64_t seed, std::string_view block);

  uint64_t Next() { return engine_(); }
  // a + (b - a) * u with u = (Next() >> 11) * 2^-53.
  double Uniform(double a, double b);
  // Uniform() redrawn until the value is strictly inside (a, b).
  double UniformOpen(double a, double b);
  // Integer in [lo, hi] by rejection sampling.
  int64_t UniformInt(int64_t lo, int64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace iasolve

#endif  // IASOLVE_RANDOM_H_
