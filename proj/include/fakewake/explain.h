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

// Proxy classifier, attributions and decisive factors for fuzzy words.

#ifndef FAKEWAKE_EXPLAIN_H_
#define FAKEWAKE_EXPLAIN_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakewake/domain.h"
#include "fakewake/evolve.h"
#include "fakewake/gbdt.h"
#include "fakewake/tree_shap.h"

namespace fakewake {

// Fuzzy words labeled 1, non-fuzzy words labeled 0, features from
// WordDomain::Features. When one class outnumbers the other by more than
// max_ratio, a seeded uniform subset of the larger class is kept (in input
// order). Throws kEmptyClass.
Dataset BuildDataset(const WordDomain& domain, std::span<const std::string> fuzzy,
                     std::span<const std::string> non_fuzzy, uint64_t seed, double max_ratio = 3.0);

// Positives are the archive candidates, negatives the rejected words.
Dataset BuildDataset(const WordDomain& domain, const FuzzyArchive& archive, uint64_t seed, double max_ratio = 3.0);

struct CrossValidation {
  double accuracy = 0.0;                  // Mean of the per-fold accuracies.
  std::vector<double> fold_accuracy;
  std::vector<double> held_out_proba;     // Per sample, from the fold that held it out.
};

// Stratified k-fold: each class is shuffled with `seed` and dealt round-robin
// into folds. Throws kDegenerateData for a single-class set and kTooFewSamples
// when a class has fewer than `folds` samples.
CrossValidation CrossValidate(const Dataset& data, int folds = 10, const GbdtParams& params = {}, uint64_t seed = 0);

struct DecisiveFactor {
  std::string unit;  // Unit symbol; empty for padding slots.
  size_t position = 0;
  double contribution = 0.0;
};

struct DecisiveFactorSet {
  double beta = 0.8;
  // Indices of the features in the minimal prefix, by descending contribution.
  std::vector<size_t> features;
  // Units owning those features, by descending summed contribution. Padding
  // features belong to no unit and are left out.
  std::vector<DecisiveFactor> factors;
};

// Feature j belongs to the unit at position j / 2. Positive contributions are
// ranked (ties to the lower index) and the shortest prefix whose sum reaches
// beta times the positive total is kept. Throws kNoPositiveContributions.
DecisiveFactorSet DecisiveFactors(std::span<const double> contributions, std::span<const std::string> unit_symbols,
                                  double beta = 0.8);

struct RankedUnit {
  std::string unit;
  double contribution = 0.0;  // Summed over words.
  size_t words = 0;           // Words in which the unit is decisive.
};

// Aggregates factor sets by unit symbol, largest total contribution first.
std::vector<RankedUnit> RankDecisiveUnits(std::span<const DecisiveFactorSet> sets);

enum class Similarity { kHigh, kMedium, kLow };
std::string_view SimilarityName(Similarity similarity);

struct GroupedFactor {
  size_t word = 0;  // Index into the factor sets.
  DecisiveFactor factor;
  double difference = 0.0;  // Embedding distance to the wake-word unit.
  Similarity group = Similarity::kLow;
};

struct PositionGroupSummary {
  size_t position = 0;
  Similarity group = Similarity::kLow;
  size_t count = 0;
  double mean_contribution = 0.0;
};

struct FactorGrouping {
  double mean = 0.0;   // Of the in-range differences.
  double delta = 0.0;  // Standard deviation of the normalized differences.
  std::vector<GroupedFactor> factors;
  std::vector<PositionGroupSummary> table;  // Sorted by position, then group.
};

// Each factor is compared with the wake-word unit at the same position.
// Differences are centred on their mean; a centred difference within delta is
// high similarity, within 2 delta medium, otherwise low. Factors past the end
// of the wake word are low similarity and do not enter the statistics.
FactorGrouping GroupFactors(const WordDomain& domain, std::span<const DecisiveFactorSet> sets,
                            std::span<const std::vector<Unit>> word_units);

struct ExplainConfig {
  GbdtParams gbdt;
  int folds = 10;
  double beta = 0.8;
  double max_class_ratio = 3.0;

  void Validate() const;
};

struct WordExplanation {
  std::string word;
  double confidence = 0.0;  // Proxy probability of being fuzzy.
  ShapExplanation shap;
  DecisiveFactorSet factors;
};

struct ExplainReport {
  TreeEnsemble model;
  size_t positives = 0;
  size_t negatives = 0;
  CrossValidation cv;
  double train_accuracy = 0.0;
  double median_dissimilarity_fuzzy = 0.0;      // Held-out 1 - gamma.
  double median_dissimilarity_non_fuzzy = 0.0;
  // Fuzzy training words the proxy classifies as fuzzy and that have a
  // positive contribution.
  std::vector<WordExplanation> words;
  std::vector<RankedUnit> ranking;
  FactorGrouping grouping;
};

// Builds the dataset from the archive, cross-validates, fits the proxy on all
// of it and explains every correctly classified fuzzy word.
ExplainReport Explain(const WordDomain& domain, const FuzzyArchive& archive, const ExplainConfig& config,
                      uint64_t seed);

double Median(std::vector<double> values);

}  // namespace fakewake

#endif  // FAKEWAKE_EXPLAIN_H_
