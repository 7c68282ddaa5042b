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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "fakewake/error.h"
#include "test_support.h"

namespace fakewake {
namespace {

using testing::AlexaDomain;
using testing::XiaoAiDomain;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kDataError;
}

DetectorModel Constant(double margin, size_t features) {
  DetectorModel m;
  m.ensemble.num_features = features;
  m.ensemble.base_score = margin;
  return m;
}

TEST(Conventional, ZeroJitterRepeatsWakeWord) {
  const auto& domain = *AlexaDomain();
  const auto data = SynthesizeConventional(domain, 20, 30, 0.0, 1);
  const auto wake = domain.Features(domain.wake_text());
  for (const auto* part : {&data.train, &data.test})
    for (size_t i = 0; i < part->size(); ++i)
      if (part->labels[i] == 1) EXPECT_EQ(part->features[i], wake);
}

TEST(Conventional, SplitSizes) {
  const auto data = SynthesizeConventional(*AlexaDomain(), 296, 399, 0.01, 2);
  EXPECT_EQ(data.train.CountLabel(1), 222u);
  EXPECT_EQ(data.test.CountLabel(1), 74u);
  EXPECT_EQ(data.train.CountLabel(0), 300u);
  EXPECT_EQ(data.test.CountLabel(0), 99u);
}

TEST(Conventional, JitterOnlyTouchesOccupiedSlots) {
  const auto& domain = *AlexaDomain();
  const auto data = SynthesizeConventional(domain, 40, 40, 0.05, 3);
  const size_t occupied = 2 * domain.wake_units().size();
  const auto wake = domain.Features(domain.wake_text());
  std::set<std::string> negatives;
  for (size_t i = 0; i < data.train.size(); ++i) {
    const auto& row = data.train.features[i];
    if (data.train.labels[i] == 0) {
      EXPECT_NE(data.train.words[i], domain.wake_text());
      EXPECT_TRUE(negatives.insert(data.train.words[i]).second);
      continue;
    }
    for (size_t j = occupied; j < row.size(); ++j) EXPECT_EQ(row[j], 0.0);
    for (size_t j = 0; j < occupied; ++j) EXPECT_LT(std::abs(row[j] - wake[j]), 0.5);
  }
}

TEST(Conventional, Deterministic) {
  const auto a = SynthesizeConventional(*XiaoAiDomain(), 16, 16, 0.01, 4);
  const auto b = SynthesizeConventional(*XiaoAiDomain(), 16, 16, 0.01, 4);
  EXPECT_EQ(a.train.features, b.train.features);
  EXPECT_EQ(a.test.words, b.test.words);
}

TEST(Conventional, Errors) {
  EXPECT_EQ(CodeOf([] { SynthesizeConventional(*AlexaDomain(), 4, 20, 0.0, 1); }), ErrorCode::kConfigError);
  EXPECT_EQ(CodeOf([] { SynthesizeConventional(*AlexaDomain(), 20, 20, -1.0, 1); }), ErrorCode::kConfigError);
}

Dataset Labeled() {
  Dataset d;
  for (int i = 0; i < 10; ++i) {
    d.features.push_back({static_cast<double>(i)});
    d.labels.push_back(i >= 6);
  }
  return d;
}

TEST(Evaluate, PerfectModel) {
  const Dataset d = Labeled();
  const auto model = TrainOriginal(d);
  const auto r = Evaluate(model, d);
  EXPECT_EQ(r.false_positive_rate, 0.0);
  EXPECT_EQ(r.false_negative_rate, 0.0);
  EXPECT_EQ(r.accuracy, 1.0);
}

TEST(Evaluate, AlwaysAccept) {
  const Dataset d = Labeled();
  const auto r = Evaluate(Constant(5.0, 1), d);
  EXPECT_EQ(r.false_positive_rate, 1.0);
  EXPECT_EQ(r.false_negative_rate, 0.0);
  EXPECT_EQ(r.true_positives, 4u);
  EXPECT_EQ(r.false_positives, 6u);
  EXPECT_NEAR(r.accuracy, 1.0 - 6.0 / 10.0, 1e-12);
}

TEST(Evaluate, AccuracyIdentity) {
  RngStream rng(8, 0);
  Dataset d;
  for (int i = 0; i < 80; ++i) {
    d.features.push_back({rng.Uniform(), rng.Uniform()});
    d.labels.push_back(rng.Bernoulli(0.5));
  }
  const auto model = TrainOriginal(d);
  Dataset test;
  for (int i = 0; i < 60; ++i) {
    test.features.push_back({rng.Uniform(), rng.Uniform()});
    test.labels.push_back(i % 2);
  }
  const auto r = Evaluate(model, test);
  EXPECT_EQ(r.true_positives + r.false_positives + r.true_negatives + r.false_negatives, test.size());
  EXPECT_NEAR(r.accuracy, 1.0 - static_cast<double>(r.false_positives + r.false_negatives) / test.size(), 1e-15);
}

TEST(Evaluate, NeedsBothClasses) {
  Dataset d = Labeled();
  for (auto& l : d.labels) l = 1;
  EXPECT_EQ(CodeOf([&] { Evaluate(Constant(0.0, 1), d); }), ErrorCode::kEmptyTestSet);
}

TEST(FuzzyRate, ConstantModels) {
  const std::vector<std::vector<double>> rows(7, std::vector<double>{0.3});
  EXPECT_EQ(FuzzyRate(Constant(-5.0, 1), rows), 0.0);
  EXPECT_EQ(FuzzyRate(Constant(5.0, 1), rows, 3), 1.0);
  EXPECT_EQ(CodeOf([] { FuzzyRate(Constant(5.0, 1), {}); }), ErrorCode::kEmptyCollective);
}

TEST(Strengthen, RejectsFuzzyRows) {
  const Dataset d = Labeled();
  const std::vector<std::vector<double>> fuzzy(6, std::vector<double>{8.0});
  const auto original = TrainOriginal(d);
  EXPECT_TRUE(original.Accepts(fuzzy[0]));
  const auto strengthened = Strengthen(d, fuzzy);
  EXPECT_FALSE(strengthened.Accepts(fuzzy[0]));
  EXPECT_EQ(CodeOf([&] { Strengthen(d, {}); }), ErrorCode::kEmptyFuzzySet);
}

TEST(Screening, CoverageIsMonotoneAndReachesOne) {
  const std::vector<std::vector<std::string>> words{{"K", "S"}, {"L", "EH"}, {"AH"}, {"K"}, {"Z", "AH"}};
  const std::vector<RankedUnit> ranking{{"K", 3.0, 2}, {"EH", 2.0, 1}, {"Z", 1.0, 1}, {"AH", 0.5, 2}};
  double last = 0.0;
  for (size_t n = 0; n <= ranking.size(); ++n) {
    const double c = ScreeningCoverage(words, ranking, n);
    EXPECT_GE(c, last);
    last = c;
  }
  EXPECT_EQ(ScreeningCoverage(words, ranking, 1), 0.4);
  EXPECT_EQ(last, 1.0);
  EXPECT_EQ(ScreeningCoverage({}, ranking, 3), 0.0);
  EXPECT_TRUE(ShouldEscalate(words[1], ranking, 2));
  EXPECT_FALSE(ShouldEscalate(words[1], ranking, 1));
}

TEST(Collective, EnglishListIsFiltered) {
  const auto& domain = *AlexaDomain();
  const auto words = CollectiveWords(domain, DefaultDataDir() / "collective.txt", {"the"}, 200, 1);
  EXPECT_LE(words.size(), 200u);
  std::set<std::string> seen;
  for (const auto& w : words) {
    EXPECT_NE(w, "the");
    EXPECT_NE(w, "alexa");
    EXPECT_TRUE(seen.insert(w).second);
    EXPECT_LE(domain.UnitsOf(w).size(), domain.slots());
  }
}

TEST(Collective, ChineseIsRandomAndValid) {
  const auto words = CollectiveWords(*XiaoAiDomain(), {}, {}, 300, 1);
  EXPECT_EQ(words.size(), 300u);
  for (const auto& w : words) EXPECT_NO_THROW(XiaoAiDomain()->tables().ParsePinyin(w));
  EXPECT_EQ(words, CollectiveWords(*XiaoAiDomain(), {}, {}, 300, 1));
}

TEST(Run, StrengtheningClosesTheGap) {
  SimulatorConfig sim;
  sim.seed = 7;
  auto det = SimulatedDetector::WithDecisiveUnit(AlexaDomain(), sim);
  EvolveConfig evolve;
  evolve.generations = 20;
  const auto archive = RunEvolution(*AlexaDomain(), *det, evolve, 7);
  const std::vector<RankedUnit> ranking{{"K", 1.0, 1}, {"S", 0.5, 1}, {"EH", 0.2, 1}};
  MitigateConfig config;
  const auto r = RunMitigation(*AlexaDomain(), archive, ranking, config, 7);
  EXPECT_GT(r.original_report.fuzzy_rate, r.strengthened_report.fuzzy_rate);
  EXPECT_GE(r.strengthened_report.accuracy, r.original_report.accuracy - 0.01);
  EXPECT_EQ(r.coverage.size(), ranking.size());
  EXPECT_GT(r.high_rate_words, 0u);
  for (const auto& w : r.collective_words) EXPECT_FALSE(archive.Contains(w));
  EXPECT_EQ(CodeOf([&] { RunMitigation(*AlexaDomain(), FuzzyArchive{}, ranking, config, 7); }),
            ErrorCode::kEmptyFuzzySet);
}

}  // namespace
}  // namespace fakewake
