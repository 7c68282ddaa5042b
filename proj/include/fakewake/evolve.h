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

// Two-objective genetic search for fuzzy words.

#ifndef FAKEWAKE_EVOLVE_H_
#define FAKEWAKE_EVOLVE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakewake/domain.h"
#include "fakewake/genome.h"
#include "fakewake/oracle.h"

namespace fakewake {

// Both objectives are maximized.
struct Objectives {
  double wake_rate = 0.0;
  double dissimilarity = 0.0;

  friend bool operator==(const Objectives&, const Objectives&) = default;
};

// a dominates b iff a is at least as good everywhere and strictly better
// somewhere.
bool Dominates(const Objectives& a, const Objectives& b);

// Indices (ascending) of the members no other member dominates.
std::vector<size_t> NonDominatedFront(std::span<const Objectives> population);

enum class Bucket { kLow, kMedium, kHigh };

std::string_view BucketName(Bucket bucket);

// Low [0.1, 0.3], Medium [0.4, 0.7], High [0.8, 1.0]. Rates between the
// bands (possible when trials != 10) go to the nearer band, split at 0.35
// and 0.75. Throws kBelowFuzzyThreshold for rates under 0.1.
Bucket BucketOf(double rate);

struct EvolveConfig {
  size_t population_size = 100;
  size_t generations = 50;
  double fuzzy_threshold = 0.1;
  int trials = 10;
  bool elitism = true;
  // Re-checks every front against the O(n^2) scan; for tests.
  bool check_front = false;
  VariationConfig variation;

  void Validate() const;
};

struct FuzzyCandidate {
  std::string word;
  Genome genome;
  Objectives objectives;
  size_t generation = 0;
};

struct FuzzyArchive {
  // Run metadata.
  uint64_t seed = 0;
  std::string wake_word;
  Language language = Language::kEnglish;
  std::string oracle;
  uint64_t query_count = 0;
  size_t generations_completed = 0;

  // Words with wake_rate >= fuzzy_threshold and dissimilarity > 0, in the
  // order they were found.
  std::vector<FuzzyCandidate> candidates;
  // Evaluated words that never woke the detector (wake rate 0).
  std::vector<FuzzyCandidate> rejected;

  bool Contains(std::string_view word) const;
  size_t CountAtLeast(double wake_rate) const;
};

// Called after each generation with the archive so far.
using GenerationCallback = std::function<void(size_t generation, const FuzzyArchive&)>;

// Runs the search. Evaluation results are memoized by word text, so each
// distinct word costs at most `trials` oracle queries per run. When the
// oracle fails the error is rethrown; `partial` (if given) then holds the
// archive up to that point.
FuzzyArchive RunEvolution(const WordDomain& domain, WakeOracle& oracle, const EvolveConfig& config, uint64_t seed,
                          FuzzyArchive* partial = nullptr, const GenerationCallback& on_generation = {});

}  // namespace fakewake

#endif  // FAKEWAKE_EVOLVE_H_
