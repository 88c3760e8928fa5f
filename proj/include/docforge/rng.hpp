// Copyright 2026 The Docforge Authors
//
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

#ifndef DOCFORGE_RNG_HPP_
#define DOCFORGE_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace docforge {

// Seeded generator with platform-independent sampling helpers.
//
// The std:: distributions are implementation-defined, so every helper here
// is built directly on the raw 64-bit engine output, which the standard pins
// down exactly. This keeps annotation bytes identical across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform in [0, bound). bound must be > 0.
  uint64_t Below(uint64_t bound);

  // Uniform integer in [lo, hi] (inclusive).
  int64_t UniformInt(int64_t lo, int64_t hi);

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  bool Chance(double probability) { return Uniform() < probability; }

  // Index drawn proportionally to non-negative weights (sum must be > 0).
  size_t Weighted(std::span<const double> weights);

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Below(i)]);
    }
  }

  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[Below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer.
uint64_t MixSeed(uint64_t value);

// Order-sensitive combination used for every derived seed in the pipeline.
uint64_t DeriveSeed(uint64_t base, uint64_t salt);
uint64_t DeriveSeed(uint64_t base, std::string_view tag, uint64_t index);

}  // namespace docforge

#endif  // DOCFORGE_RNG_HPP_
