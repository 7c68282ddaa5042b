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

#include "fakewake/explain.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "fakewake/error.h"
#include "fakewake/rng.h"

namespace fakewake {
namespace {

constexpr uint64_t kDownsampleStream = 2000;
constexpr uint64_t kFoldStream = 3000;

void Shuffle(std::vector<size_t>& v, RngStream& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.UniformIndex(i)]);
}

// `keep` indices of [0, n), chosen uniformly and returned ascending.
std::vector<size_t> Subsample(size_t n, size_t keep, RngStream& rng) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  if (keep >= n) return idx;
  Shuffle(idx, rng);
  idx.resize(keep);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

Dataset BuildDataset(const WordDomain& domain, std::span<const std::string> fuzzy,
                     std::span<const std::string> non_fuzzy, uint64_t seed, double max_ratio) {
  if (fuzzy.empty() || non_fuzzy.empty())
    throw Error(ErrorCode::kEmptyClass, "need fuzzy and non-fuzzy words, got " + std::to_string(fuzzy.size()) +
                                            " and " + std::to_string(non_fuzzy.size()));
  if (!(max_ratio >= 1.0)) throw Error(ErrorCode::kConfigError, "max_class_ratio must be at least 1");
  RngStream rng(seed, kDownsampleStream);
  auto cap = [&](size_t larger, size_t smaller) {
    const double limit = std::floor(max_ratio * static_cast<double>(smaller));
    return static_cast<double>(larger) > limit ? static_cast<size_t>(limit) : larger;
  };
  const auto keep_pos = Subsample(fuzzy.size(), cap(fuzzy.size(), non_fuzzy.size()), rng);
  const auto keep_neg = Subsample(non_fuzzy.size(), cap(non_fuzzy.size(), fuzzy.size()), rng);

  Dataset data;
  auto add = [&](const std::string& word, int label) {
    data.features.push_back(domain.Features(word));
    data.labels.push_back(label);
    data.words.push_back(word);
  };
  for (size_t i : keep_pos) add(fuzzy[i], 1);
  for (size_t i : keep_neg) add(non_fuzzy[i], 0);
  return data;
}

Dataset BuildDataset(const WordDomain& domain, const FuzzyArchive& archive, uint64_t seed, double max_ratio) {
  std::vector<std::string> fuzzy, non_fuzzy;
  for (const auto& c : archive.candidates) fuzzy.push_back(c.word);
  for (const auto& c : archive.rejected) non_fuzzy.push_back(c.word);
  return BuildDataset(domain, fuzzy, non_fuzzy, seed, max_ratio);
}

CrossValidation CrossValidate(const Dataset& data, int folds, const GbdtParams& params, uint64_t seed) {
  if (folds < 2) throw Error(ErrorCode::kConfigError, "folds must be at least 2");
  const size_t positives = data.CountLabel(1);
  const size_t negatives = data.CountLabel(0);
  if (positives == 0 || negatives == 0) throw Error(ErrorCode::kDegenerateData, "dataset has a single class");
  const auto k = static_cast<size_t>(folds);
  if (positives < k || negatives < k)
    throw Error(ErrorCode::kTooFewSamples, "each class needs at least " + std::to_string(folds) + " samples");

  std::vector<size_t> fold_of(data.size());
  for (int label = 0; label <= 1; ++label) {
    std::vector<size_t> members;
    for (size_t i = 0; i < data.size(); ++i)
      if (data.labels[i] == label) members.push_back(i);
    RngStream rng(seed, kFoldStream + static_cast<uint64_t>(label));
    Shuffle(members, rng);
    for (size_t p = 0; p < members.size(); ++p) fold_of[members[p]] = p % k;
  }

  CrossValidation cv;
  cv.held_out_proba.assign(data.size(), 0.0);
  for (size_t f = 0; f < k; ++f) {
    Dataset train;
    std::vector<size_t> test;
    for (size_t i = 0; i < data.size(); ++i) {
      if (fold_of[i] == f) {
        test.push_back(i);
      } else {
        train.features.push_back(data.features[i]);
        train.labels.push_back(data.labels[i]);
      }
    }
    const TreeEnsemble model = TrainGbdt(train, params);
    size_t correct = 0;
    for (size_t i : test) {
      const double p = model.PredictProba(data.features[i]);
      cv.held_out_proba[i] = p;
      correct += (p >= 0.5 ? 1 : 0) == data.labels[i];
    }
    cv.fold_accuracy.push_back(static_cast<double>(correct) / static_cast<double>(test.size()));
  }
  cv.accuracy = std::accumulate(cv.fold_accuracy.begin(), cv.fold_accuracy.end(), 0.0) / static_cast<double>(k);
  return cv;
}

DecisiveFactorSet DecisiveFactors(std::span<const double> contributions, std::span<const std::string> unit_symbols,
                                  double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw Error(ErrorCode::kConfigError, "beta must lie in (0, 1]");
  std::vector<size_t> positive;
  double total = 0.0;
  for (size_t j = 0; j < contributions.size(); ++j) {
    if (contributions[j] > 0.0) {
      positive.push_back(j);
      total += contributions[j];
    }
  }
  if (positive.empty()) throw Error(ErrorCode::kNoPositiveContributions, "no feature contributes positively");
  std::stable_sort(positive.begin(), positive.end(),
                   [&](size_t a, size_t b) { return contributions[a] > contributions[b]; });

  DecisiveFactorSet set;
  set.beta = beta;
  const double target = beta * total * (1.0 - 1e-12);
  double running = 0.0;
  for (size_t j : positive) {
    set.features.push_back(j);
    running += contributions[j];
    if (running >= target) break;
  }

  std::map<size_t, double> by_position;
  for (size_t j : set.features) {
    const size_t position = j / 2;
    if (position < unit_symbols.size()) by_position[position] += contributions[j];
  }
  for (const auto& [position, value] : by_position) set.factors.push_back({unit_symbols[position], position, value});
  std::stable_sort(set.factors.begin(), set.factors.end(),
                   [](const auto& a, const auto& b) { return a.contribution > b.contribution; });
  return set;
}

std::vector<RankedUnit> RankDecisiveUnits(std::span<const DecisiveFactorSet> sets) {
  std::map<std::string, RankedUnit> totals;
  for (const auto& set : sets) {
    std::map<std::string, bool> seen;
    for (const auto& f : set.factors) {
      RankedUnit& r = totals[f.unit];
      r.unit = f.unit;
      r.contribution += f.contribution;
      if (seen.emplace(f.unit, true).second) ++r.words;
    }
  }
  std::vector<RankedUnit> out;
  for (auto& [_, r] : totals) out.push_back(std::move(r));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.contribution > b.contribution; });
  return out;
}

std::string_view SimilarityName(Similarity similarity) {
  switch (similarity) {
    case Similarity::kHigh:
      return "high";
    case Similarity::kMedium:
      return "medium";
    case Similarity::kLow:
      return "low";
  }
  return "?";
}

FactorGrouping GroupFactors(const WordDomain& domain, std::span<const DecisiveFactorSet> sets,
                            std::span<const std::vector<Unit>> word_units) {
  if (sets.size() != word_units.size()) throw Error(ErrorCode::kLengthMismatch, "one unit list per factor set");
  const auto& wake = domain.wake_units();
  const auto& tables = domain.tables();

  FactorGrouping grouping;
  std::vector<double> in_range;
  for (size_t w = 0; w < sets.size(); ++w) {
    for (const auto& f : sets[w].factors) {
      GroupedFactor g{w, f, 0.0, Similarity::kLow};
      if (f.position < wake.size() && f.position < word_units[w].size()) {
        g.difference = Norm(tables.Embedding(word_units[w][f.position]), tables.Embedding(wake[f.position]));
        in_range.push_back(g.difference);
      } else {
        g.difference = std::numeric_limits<double>::infinity();
      }
      grouping.factors.push_back(std::move(g));
    }
  }
  if (!in_range.empty()) {
    grouping.mean = std::accumulate(in_range.begin(), in_range.end(), 0.0) / static_cast<double>(in_range.size());
    double ss = 0.0;
    for (double d : in_range) ss += (d - grouping.mean) * (d - grouping.mean);
    grouping.delta = std::sqrt(ss / static_cast<double>(in_range.size()));
  }
  constexpr double kTol = 1e-12;
  for (auto& g : grouping.factors) {
    if (!std::isfinite(g.difference)) continue;
    const double centred = g.difference - grouping.mean;
    if (centred <= grouping.delta + kTol) {
      g.group = Similarity::kHigh;
    } else if (centred <= 2.0 * grouping.delta + kTol) {
      g.group = Similarity::kMedium;
    }
  }

  std::map<std::pair<size_t, int>, std::pair<size_t, double>> cells;
  for (const auto& g : grouping.factors) {
    auto& cell = cells[{g.factor.position, static_cast<int>(g.group)}];
    ++cell.first;
    cell.second += g.factor.contribution;
  }
  for (const auto& [key, cell] : cells)
    grouping.table.push_back({key.first, static_cast<Similarity>(key.second), cell.first,
                              cell.second / static_cast<double>(cell.first)});
  return grouping;
}

void ExplainConfig::Validate() const {
  gbdt.Validate();
  if (folds < 2) throw Error(ErrorCode::kConfigError, "folds must be at least 2");
  if (!(beta > 0.0 && beta <= 1.0)) throw Error(ErrorCode::kConfigError, "beta must lie in (0, 1]");
  if (!(max_class_ratio >= 1.0)) throw Error(ErrorCode::kConfigError, "max_class_ratio must be at least 1");
}

ExplainReport Explain(const WordDomain& domain, const FuzzyArchive& archive, const ExplainConfig& config,
                      uint64_t seed) {
  config.Validate();
  const Dataset data = BuildDataset(domain, archive, seed, config.max_class_ratio);

  ExplainReport report;
  report.positives = data.CountLabel(1);
  report.negatives = data.CountLabel(0);
  report.cv = CrossValidate(data, config.folds, config.gbdt, seed);
  std::vector<double> fuzzy_scores, other_scores;
  for (size_t i = 0; i < data.size(); ++i)
    (data.labels[i] == 1 ? fuzzy_scores : other_scores).push_back(1.0 - report.cv.held_out_proba[i]);
  report.median_dissimilarity_fuzzy = Median(fuzzy_scores);
  report.median_dissimilarity_non_fuzzy = Median(other_scores);

  report.model = TrainGbdt(data, config.gbdt);
  report.train_accuracy = Accuracy(report.model, data);

  std::vector<DecisiveFactorSet> sets;
  std::vector<std::vector<Unit>> units;
  for (size_t i = 0; i < data.size(); ++i) {
    if (data.labels[i] != 1) continue;
    WordExplanation w;
    w.word = data.words[i];
    w.confidence = report.model.PredictProba(data.features[i]);
    if (w.confidence < 0.5) continue;
    w.shap = ShapValues(report.model, data.features[i]);
    auto word_units = domain.UnitsOf(w.word);
    std::vector<std::string> symbols;
    for (const auto& u : word_units) symbols.push_back(domain.tables().UnitSymbol(u));
    try {
      w.factors = DecisiveFactors(w.shap.contributions, symbols, config.beta);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoPositiveContributions) throw;
      continue;
    }
    sets.push_back(w.factors);
    units.push_back(std::move(word_units));
    report.words.push_back(std::move(w));
  }
  report.ranking = RankDecisiveUnits(sets);
  report.grouping = GroupFactors(domain, sets, units);
  return report;
}

}  // namespace fakewake
