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

// Detector strengthening and screening: dataset synthesis, the reference
// detector, retraining with fuzzy negatives and the evaluation metrics.

#ifndef FAKEWAKE_MITIGATE_H_
#define FAKEWAKE_MITIGATE_H_

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fakewake/domain.h"
#include "fakewake/evolve.h"
#include "fakewake/explain.h"
#include "fakewake/gbdt.h"

namespace fakewake {

struct ConventionalDataset {
  Dataset train;
  Dataset test;
};

// Positives are the wake word's features plus N(0, jitter^2) noise on each
// feature of an occupied slot (padding stays zero); negatives are distinct
// random valid words other than the wake word and anything in `exclude`. Each class is shuffled and its first
// ceil(3n/4) samples go to training. Throws kConfigError when a count is
// below 8 or jitter is negative.
ConventionalDataset SynthesizeConventional(const WordDomain& domain, size_t n_pos, size_t n_neg, double jitter,
                                           uint64_t seed, const std::set<std::string>& exclude = {});

// English: the lines of `word_list` in order, canonicalized, skipping words
// that do not fit the feature slots. Chinese: random valid words. Words in
// `exclude` and duplicates are dropped; at most `limit` words (0 = no limit,
// which for Chinese means 5000).
std::vector<std::string> CollectiveWords(const WordDomain& domain, const std::filesystem::path& word_list,
                                         const std::set<std::string>& exclude, size_t limit, uint64_t seed);

// Trainer settings for the reference detector: the proxy defaults with a
// learning rate of 0.3.
inline GbdtParams DetectorParams() {
  GbdtParams p;
  p.learning_rate = 0.3;
  return p;
}

struct DetectorModel {
  TreeEnsemble ensemble;
  double threshold = 0.5;

  bool Accepts(std::span<const double> x) const { return ensemble.PredictProba(x) >= threshold; }
};

// Throws kDegenerateData unless both classes are present.
DetectorModel TrainOriginal(const Dataset& train, const GbdtParams& params = DetectorParams());

// Retrains from scratch on `train` plus the fuzzy feature rows labeled 0.
// Throws kEmptyFuzzySet.
DetectorModel Strengthen(const Dataset& train, std::span<const std::vector<double>> fuzzy,
                         const GbdtParams& params = DetectorParams());

struct MitigationReport {
  double false_positive_rate = 0.0;
  double false_negative_rate = 0.0;
  double accuracy = 0.0;
  double fuzzy_rate = 0.0;
  size_t true_positives = 0;
  size_t false_positives = 0;
  size_t true_negatives = 0;
  size_t false_negatives = 0;
};

// Confusion-matrix rates at the model threshold; fuzzy_rate is left at 0.
// Throws kEmptyTestSet unless both classes are present.
MitigationReport Evaluate(const DetectorModel& model, const Dataset& test);

// Share of the collective rows the model accepts. Throws kEmptyCollective.
double FuzzyRate(const DetectorModel& model, std::span<const std::vector<double>> collective, unsigned threads = 1);

// Share of words containing at least one of the first n ranked units, at any
// position. Returns 0 for an empty word set.
double ScreeningCoverage(std::span<const std::vector<std::string>> word_units, std::span<const RankedUnit> ranking,
                         size_t n);

// True when the word contains one of the first n ranked units and should be
// passed on for closer examination.
bool ShouldEscalate(std::span<const std::string> units, std::span<const RankedUnit> ranking, size_t n);

struct MitigateConfig {
  size_t n_pos = 296;
  size_t n_neg = 399;
  double jitter = 0.01;
  GbdtParams gbdt = DetectorParams();
  size_t collective_size = 0;         // 0 = the whole list.
  std::filesystem::path collective;   // Empty = collective.txt in the data directory.
  size_t screening_top_n = 3;
  double high_wake_rate = 0.8;

  void Validate() const;
};

struct MitigationResult {
  ConventionalDataset conventional;
  std::vector<std::string> fuzzy_words;
  std::vector<std::string> collective_words;
  DetectorModel original;
  DetectorModel strengthened;
  MitigationReport original_report;
  MitigationReport strengthened_report;
  size_t high_rate_words = 0;
  double high_rate_rejection = 0.0;  // Share of those the strengthened model rejects.
  double original_high_rate_rejection = 0.0;
  std::vector<double> coverage;      // coverage[n - 1] for n = 1 .. ranking size.
};

// Throws kEmptyFuzzySet when the archive has no candidates.
MitigationResult RunMitigation(const WordDomain& domain, const FuzzyArchive& archive,
                               std::span<const RankedUnit> ranking, const MitigateConfig& config, uint64_t seed,
                               unsigned threads = 1);

}  // namespace fakewake

#endif  // FAKEWAKE_MITIGATE_H_
