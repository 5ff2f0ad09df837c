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

#include "iasolve/random.h"

#include <limits>
#include <stdexcept>

namespace iasolve {

uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t StreamSeed(uint64_t seed, std::string_view block) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (char c : block) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  uint64_t state = seed ^ hash;
  return SplitMix64(state);
}

Rng::Rng(uint64_t seed, std::string_view block) : engine_(StreamSeed(seed, block)) {}

double Rng::Uniform(double a, double b) {
  double u = static_cast<double>(Next() >> 11) * 0x1.0p-53;
  return a + (b - a) * u;
}

double Rng::UniformOpen(double a, double b) {
  for (;;) {
    double v = Uniform(a, b);
    if (v > a && v < b) return v;
  }
}

int64_t Rng::UniformInt(int64_t lo, int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty integer range");
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<int64_t>(Next());
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % span;
  for (;;) {
    uint64_t v = Next();
    if (v < limit) return lo + static_cast<int64_t>(v % span);
  }
}

}  // namespace iasolve
