// Copyright 2026 The qconn authors
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

#pragma once

#include <cstdint>
#include <random>

namespace qconn {

/// Name recorded in every generated output so a run can be reproduced.
/// The engine is std::mt19937_64 (bit-portable per the standard) and all
/// real-valued draws go through the 53-bit mapping below rather than
/// std::uniform_real_distribution, whose output is implementation-defined.
inline constexpr const char* kRngAlgorithm = "mt19937_64/53-bit";

/// splitmix64 step; used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for substream `stream` of a run seeded with `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed,
                                    std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x51ed2701ULL));
}

/// Seedable generator with portable real-valued draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double u01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + u01() * (hi - lo); }

  bool bernoulli(double p) { return u01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qconn
