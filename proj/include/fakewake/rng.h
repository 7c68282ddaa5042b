/*
 * Copyright 2026 The FakeWake Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FAKEWAKE_RNG_H_
#define FAKEWAKE_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>

namespace fakewake {

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Maps a 64-bit value to a double in [0, 1) using the top 53 bits.
inline double UnitInterval(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// A reproducible random stream identified by (seed, stream index).
//
// Only integer and [0,1) draws are exposed, and both are computed here rather
// than through <random> distributions, whose outputs are implementation
// defined. This keeps archives byte-identical across standard libraries.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream)
      : engine_(SplitMix64(seed ^ SplitMix64(stream + 0x632BE59BD9B4E019ULL))) {}

  uint64_t NextBits() { return engine_(); }

  double Uniform() { return UnitInterval(engine_()); }

  // Uniform integer in [lo, hi], rejection sampled.
  int UniformInt(int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<int>(draw % span);
  }

  size_t UniformIndex(size_t n) { return static_cast<size_t>(UniformInt(0, static_cast<int>(n) - 1)); }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Standard normal via Box-Muller; one value per call.
  double Normal() {
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fakewake

#endif  // FAKEWAKE_RNG_H_
