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

#include "fakewake/distance.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fakewake/error.h"

namespace fakewake {

void DistanceConfig::Validate() const {
  if (!(normalization > 0.0)) throw Error(ErrorCode::kConfigError, "distance normalization must be positive");
  if (!(space_cost > 0.0 && space_cost <= 1.0))
    throw Error(ErrorCode::kConfigError, "space_cost must lie in (0, 1]");
  if (!(tone_penalty >= 0.0)) throw Error(ErrorCode::kConfigError, "tone_penalty must be non-negative");
}

double ChineseDist(const PhoneticTables& tables, const ChineseWord& a, const ChineseWord& b,
                   const DistanceConfig& config) {
  const size_t n = a.syllables.size();
  if (n != b.syllables.size() || n == 0)
    throw Error(ErrorCode::kLengthMismatch, "words have " + std::to_string(n) + " and " +
                                                std::to_string(b.syllables.size()) + " characters");
  double total = 0.0;
  for (size_t i = 0; i < n; ++i)
    total += std::tanh(tables.CharacterDistance(a.syllables[i], b.syllables[i], config.tone_penalty) /
                       config.normalization);
  return total / static_cast<double>(n);
}

double PhonemeOrBoundaryDistance(const PhoneticTables& tables, PhonemeId p, PhonemeId q,
                                 const DistanceConfig& config) {
  if (p == kWordBoundary && q == kWordBoundary) return 0.0;
  if (p == kWordBoundary || q == kWordBoundary) return config.space_cost;
  return tables.PhonemeDistance(p, q);
}

double EnglishDist(const PhoneticTables& tables, const PhonemeSequence& a, const PhonemeSequence& b,
                   const DistanceConfig& config) {
  const auto& x = a.phonemes;
  const auto& y = b.phonemes;
  const size_t m = x.size();
  const size_t n = y.size();
  if (m + n == 0) throw Error(ErrorCode::kBothEmpty, "both phoneme sequences are empty");

  // Two-row DP over the (m+1) x (n+1) alignment lattice.
  std::vector<double> prev(n + 1), cur(n + 1);
  for (size_t j = 0; j <= n; ++j) prev[j] = static_cast<double>(j);
  for (size_t i = 1; i <= m; ++i) {
    cur[0] = static_cast<double>(i);
    for (size_t j = 1; j <= n; ++j) {
      const double sub = prev[j - 1] + 2.0 * PhonemeOrBoundaryDistance(tables, x[i - 1], y[j - 1], config);
      cur[j] = std::min({prev[j] + 1.0, cur[j - 1] + 1.0, sub});
    }
    std::swap(prev, cur);
  }
  return prev[n] / static_cast<double>(m + n);
}

}  // namespace fakewake
