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

#include "fakewake/mitigate.h"

#include <algorithm>
#include <fstream>

#include "fakewake/error.h"
#include "fakewake/parallel.h"
#include "fakewake/rng.h"

namespace fakewake {
namespace {

constexpr uint64_t kJitterStream = 4000;
constexpr uint64_t kNegativeStream = 4100;
constexpr uint64_t kSplitStream = 4200;
constexpr uint64_t kCollectiveStream = 4300;
constexpr size_t kDefaultChineseCollective = 5000;

void Append(Dataset& to, const Dataset& from, size_t i) {
  to.features.push_back(from.features[i]);
  to.labels.push_back(from.labels[i]);
  to.words.push_back(from.words[i]);
}

// Distinct random words, `count` of them, avoiding `exclude`.
std::vector<std::string> RandomWords(const WordDomain& domain, size_t count, std::set<std::string> exclude,
                                     RngStream& rng) {
  std::vector<std::string> out;
  const size_t max_attempts = 1000 * count + 1000;
  for (size_t attempt = 0; out.size() < count && attempt < max_attempts; ++attempt) {
    const auto text = domain.Decode(domain.space().Random(rng));
    if (!text || domain.UnitsOf(*text).size() > domain.slots()) continue;
    if (exclude.insert(*text).second) out.push_back(*text);
  }
  if (out.size() < count)
    throw Error(ErrorCode::kDegenerateData, "could only draw " + std::to_string(out.size()) + " of " +
                                                std::to_string(count) + " distinct random words");
  return out;
}

}  // namespace

ConventionalDataset SynthesizeConventional(const WordDomain& domain, size_t n_pos, size_t n_neg, double jitter,
                                           uint64_t seed, const std::set<std::string>& exclude) {
  if (n_pos < 8 || n_neg < 8) throw Error(ErrorCode::kConfigError, "n_pos and n_neg must be at least 8");
  if (!(jitter >= 0.0)) throw Error(ErrorCode::kConfigError, "jitter must be non-negative");

  Dataset all;
  const std::vector<double> wake = domain.Features(domain.wake_text());
  const size_t occupied = 2 * domain.wake_units().size();
  RngStream noise(seed, kJitterStream);
  for (size_t i = 0; i < n_pos; ++i) {
    std::vector<double> row = wake;
    for (size_t f = 0; f < occupied && jitter > 0.0; ++f) row[f] += jitter * noise.Normal();
    all.features.push_back(std::move(row));
    all.labels.push_back(1);
    all.words.push_back(domain.wake_text());
  }
  std::set<std::string> avoid = exclude;
  avoid.insert(domain.wake_text());
  RngStream pick(seed, kNegativeStream);
  for (auto& word : RandomWords(domain, n_neg, std::move(avoid), pick)) {
    all.features.push_back(domain.Features(word));
    all.labels.push_back(0);
    all.words.push_back(std::move(word));
  }

  ConventionalDataset out;
  for (int label = 1; label >= 0; --label) {
    std::vector<size_t> members;
    for (size_t i = 0; i < all.size(); ++i)
      if (all.labels[i] == label) members.push_back(i);
    RngStream rng(seed, kSplitStream + static_cast<uint64_t>(label));
    for (size_t i = members.size(); i > 1; --i) std::swap(members[i - 1], members[rng.UniformIndex(i)]);
    const size_t n_train = (3 * members.size() + 3) / 4;
    for (size_t k = 0; k < members.size(); ++k) Append(k < n_train ? out.train : out.test, all, members[k]);
  }
  return out;
}

std::vector<std::string> CollectiveWords(const WordDomain& domain, const std::filesystem::path& word_list,
                                         const std::set<std::string>& exclude, size_t limit, uint64_t seed) {
  std::set<std::string> seen = exclude;
  seen.insert(domain.wake_text());
  if (domain.language() == Language::kChinese) {
    RngStream rng(seed, kCollectiveStream);
    return RandomWords(domain, limit == 0 ? kDefaultChineseCollective : limit, std::move(seen), rng);
  }
  std::ifstream in(word_list);
  if (!in) throw Error(ErrorCode::kDataError, "cannot read " + word_list.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line) && (limit == 0 || out.size() < limit)) {
    std::string word;
    try {
      word = domain.Canonical(line);
      if (word.empty() || domain.UnitsOf(word).size() > domain.slots()) continue;
    } catch (const Error&) {
      continue;
    }
    if (seen.insert(word).second) out.push_back(std::move(word));
  }
  return out;
}

DetectorModel TrainOriginal(const Dataset& train, const GbdtParams& params) {
  return DetectorModel{TrainGbdt(train, params), 0.5};
}

DetectorModel Strengthen(const Dataset& train, std::span<const std::vector<double>> fuzzy, const GbdtParams& params) {
  if (fuzzy.empty()) throw Error(ErrorCode::kEmptyFuzzySet, "no fuzzy words to retrain with");
  Dataset data;
  data.features = train.features;
  data.labels = train.labels;
  for (const auto& row : fuzzy) {
    data.features.push_back(row);
    data.labels.push_back(0);
  }
  return DetectorModel{TrainGbdt(data, params), 0.5};
}

MitigationReport Evaluate(const DetectorModel& model, const Dataset& test) {
  if (test.CountLabel(0) == 0 || test.CountLabel(1) == 0)
    throw Error(ErrorCode::kEmptyTestSet, "test set needs both classes");
  MitigationReport r;
  for (size_t i = 0; i < test.size(); ++i) {
    const bool accepted = model.Accepts(test.features[i]);
    if (test.labels[i] == 1) {
      ++(accepted ? r.true_positives : r.false_negatives);
    } else {
      ++(accepted ? r.false_positives : r.true_negatives);
    }
  }
  const auto ratio = [](size_t a, size_t b) { return static_cast<double>(a) / static_cast<double>(a + b); };
  r.false_positive_rate = ratio(r.false_positives, r.true_negatives);
  r.false_negative_rate = ratio(r.false_negatives, r.true_positives);
  r.accuracy = 1.0 - static_cast<double>(r.false_positives + r.false_negatives) / static_cast<double>(test.size());
  return r;
}

double FuzzyRate(const DetectorModel& model, std::span<const std::vector<double>> collective, unsigned threads) {
  if (collective.empty()) throw Error(ErrorCode::kEmptyCollective, "collective dataset is empty");
  std::vector<char> accepted(collective.size(), 0);
  ParallelFor(collective.size(), threads, [&](size_t i) { accepted[i] = model.Accepts(collective[i]); });
  const auto n = std::count(accepted.begin(), accepted.end(), 1);
  return static_cast<double>(n) / static_cast<double>(collective.size());
}

bool ShouldEscalate(std::span<const std::string> units, std::span<const RankedUnit> ranking, size_t n) {
  const size_t top = std::min(n, ranking.size());
  for (size_t r = 0; r < top; ++r)
    if (std::find(units.begin(), units.end(), ranking[r].unit) != units.end()) return true;
  return false;
}

double ScreeningCoverage(std::span<const std::vector<std::string>> word_units, std::span<const RankedUnit> ranking,
                         size_t n) {
  if (word_units.empty()) return 0.0;
  size_t covered = 0;
  for (const auto& units : word_units) covered += ShouldEscalate(units, ranking, n);
  return static_cast<double>(covered) / static_cast<double>(word_units.size());
}

void MitigateConfig::Validate() const {
  gbdt.Validate();
  if (n_pos < 8 || n_neg < 8) throw Error(ErrorCode::kConfigError, "n_pos and n_neg must be at least 8");
  if (!(jitter >= 0.0)) throw Error(ErrorCode::kConfigError, "jitter must be non-negative");
  if (!(high_wake_rate > 0.0 && high_wake_rate <= 1.0))
    throw Error(ErrorCode::kConfigError, "high_wake_rate must lie in (0, 1]");
}

MitigationResult RunMitigation(const WordDomain& domain, const FuzzyArchive& archive,
                               std::span<const RankedUnit> ranking, const MitigateConfig& config, uint64_t seed,
                               unsigned threads) {
  config.Validate();
  if (archive.candidates.empty()) throw Error(ErrorCode::kEmptyFuzzySet, "archive has no fuzzy words");

  MitigationResult result;
  std::set<std::string> fuzzy_set;
  for (const auto& c : archive.candidates) {
    result.fuzzy_words.push_back(c.word);
    fuzzy_set.insert(c.word);
  }
  result.conventional = SynthesizeConventional(domain, config.n_pos, config.n_neg, config.jitter, seed, fuzzy_set);

  std::set<std::string> taken = fuzzy_set;
  for (const Dataset* d : {&result.conventional.train, &result.conventional.test})
    taken.insert(d->words.begin(), d->words.end());
  const auto list = config.collective.empty() ? DefaultDataDir() / "collective.txt" : config.collective;
  result.collective_words = CollectiveWords(domain, list, taken, config.collective_size, seed);

  std::vector<std::vector<double>> fuzzy_rows(result.fuzzy_words.size());
  ParallelFor(fuzzy_rows.size(), threads, [&](size_t i) { fuzzy_rows[i] = domain.Features(result.fuzzy_words[i]); });
  std::vector<std::vector<double>> collective_rows(result.collective_words.size());
  ParallelFor(collective_rows.size(), threads,
              [&](size_t i) { collective_rows[i] = domain.Features(result.collective_words[i]); });

  result.original = TrainOriginal(result.conventional.train, config.gbdt);
  result.strengthened = Strengthen(result.conventional.train, fuzzy_rows, config.gbdt);
  result.original_report = Evaluate(result.original, result.conventional.test);
  result.original_report.fuzzy_rate = FuzzyRate(result.original, collective_rows, threads);
  result.strengthened_report = Evaluate(result.strengthened, result.conventional.test);
  result.strengthened_report.fuzzy_rate = FuzzyRate(result.strengthened, collective_rows, threads);

  size_t rejected = 0, rejected_before = 0;
  for (size_t i = 0; i < archive.candidates.size(); ++i) {
    if (archive.candidates[i].objectives.wake_rate < config.high_wake_rate - 1e-12) continue;
    ++result.high_rate_words;
    rejected += !result.strengthened.Accepts(fuzzy_rows[i]);
    rejected_before += !result.original.Accepts(fuzzy_rows[i]);
  }
  if (result.high_rate_words > 0) {
    result.high_rate_rejection = static_cast<double>(rejected) / static_cast<double>(result.high_rate_words);
    result.original_high_rate_rejection =
        static_cast<double>(rejected_before) / static_cast<double>(result.high_rate_words);
  }

  std::vector<std::vector<std::string>> units;
  for (const auto& word : result.fuzzy_words) {
    std::vector<std::string> symbols;
    for (const auto& u : domain.UnitsOf(word)) symbols.push_back(domain.tables().UnitSymbol(u));
    units.push_back(std::move(symbols));
  }
  for (size_t n = 1; n <= ranking.size(); ++n) result.coverage.push_back(ScreeningCoverage(units, ranking, n));
  return result;
}

}  // namespace fakewake
