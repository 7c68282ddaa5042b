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

#include "fakewake/genome.h"

#include <gtest/gtest.h>

#include <limits>

#include "fakewake/error.h"
#include "test_support.h"

namespace fakewake {
namespace {

const PhoneticTables& T() { return *PhoneticTables::Default(); }
std::shared_ptr<const PhoneticTables> Shared() { return PhoneticTables::Default(); }

Genome Letters(std::string_view text, size_t length) { return EncodeEnglish({std::string(text)}, length); }

TEST(Chinese, DecodesWakeWord) {
  const int x = T().InitialIndex("x"), d = T().InitialIndex("d");
  const int iao = T().FinalIndex("iao"), u = T().FinalIndex("u");
  const Genome g{{x, iao, 3, d, u, 4, x, iao, 3, d, u, 4}};
  EXPECT_EQ(T().RenderWord(DecodeChinese(T(), g)), "xiǎo dù xiǎo dù");
  EXPECT_EQ(EncodeChinese(DecodeChinese(T(), g)), g);
}

TEST(Chinese, InvalidCombination) {
  const Genome g{{T().InitialIndex("x"), T().FinalIndex("ang"), 1}};
  try {
    DecodeChinese(T(), g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidCombination);
  }
}

TEST(Chinese, RepairPicksNearestValidFinal) {
  const int x = T().InitialIndex("x");
  const int ang = T().FinalIndex("ang");
  const Genome repaired = RepairChinese(T(), Genome{{x, ang, 1}});
  // Oracle: scan every valid final for x by embedding distance.
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int f = 1; f <= kNumFinals; ++f) {
    if (!T().ValidateSyllable(x, f)) continue;
    const double dist = Norm(T().Embedding({UnitKind::kFinal, f}), T().Embedding({UnitKind::kFinal, ang}));
    if (dist < best_d) {
      best_d = dist;
      best = f;
    }
  }
  EXPECT_EQ(repaired.genes, (std::vector<int>{x, best, 1}));
  EXPECT_EQ(RepairChinese(T(), repaired), repaired);
}

TEST(Chinese, RepairLeavesValidGenomes) {
  const auto g = EncodeChinese(T().ParsePinyin("xiǎo ài tóng xué"));
  EXPECT_EQ(RepairChinese(T(), g), g);
}

TEST(Chinese, RandomGenomesAreValid) {
  const auto space = GenomeSpace::Chinese(Shared(), 4);
  RngStream rng(3, 0);
  for (int i = 0; i < 500; ++i) {
    const Genome g = space.Random(rng);
    EXPECT_TRUE(space.InRange(g));
    EXPECT_NO_THROW(DecodeChinese(T(), g));
  }
}

TEST(English, TrimsAndCollapses) {
  EXPECT_EQ(DecodeEnglish(Letters("alexa", 7)).text, "alexa");
  Genome g = Letters("hey", 3);
  g.genes.push_back(kSpaceGene);
  for (int x : Letters("siri", 4).genes) g.genes.push_back(x);
  EXPECT_EQ(DecodeEnglish(g).text, "hey siri");
  EXPECT_EQ(DecodeEnglish(Genome{{27, 1, 27, 27, 2, 27}}).text, "a b");
}

TEST(English, AllSpaces) {
  try {
    DecodeEnglish(Genome{std::vector<int>(5, kSpaceGene)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAllSpaces);
  }
}

TEST(Variation, ZeroMutationIsIdentity) {
  const auto space = GenomeSpace::English(7);
  VariationConfig config;
  config.mutation_rate = 0.0;
  RngStream rng(1, 0);
  const Genome g = Letters("alexa", 7);
  EXPECT_EQ(Mutate(space, g, config, rng), g);
}

TEST(Variation, FullMutationResamplesEveryGene) {
  const auto space = GenomeSpace::English(200);
  VariationConfig config;
  config.mutation_rate = 1.0;
  RngStream rng(2, 0);
  const Genome g{std::vector<int>(200, 1)};
  const Genome m = Mutate(space, g, config, rng);
  size_t changed = 0;
  for (size_t i = 0; i < 200; ++i) changed += m.genes[i] != 1;
  // Each gene keeps its old value with probability 1/27.
  EXPECT_GT(changed, 170u);
  EXPECT_TRUE(space.InRange(m));
}

TEST(Variation, Deterministic) {
  const auto space = GenomeSpace::Chinese(Shared(), 4);
  const auto g = EncodeChinese(T().ParsePinyin("xiǎo ài tóng xué"));
  VariationConfig config;
  config.mutation_rate = 0.5;
  RngStream a(9, 4), b(9, 4);
  EXPECT_EQ(Mutate(space, g, config, a), Mutate(space, g, config, b));
}

TEST(Variation, CrossoverExample) {
  const auto space = GenomeSpace::English(5);
  const auto [c1, c2] = CrossoverAt(space, Letters("alexa", 5), Letters("olive", 5), 2);
  EXPECT_EQ(DecodeEnglish(c1).text, "alive");
  EXPECT_EQ(DecodeEnglish(c2).text, "olexa");
}

TEST(Variation, CrossoverPreservesGenesPerPosition) {
  const auto space = GenomeSpace::English(7);
  const Genome a = Letters("alexa", 7), b = Letters("computr", 7);
  VariationConfig config;
  config.crossover_rate = 1.0;
  RngStream rng(4, 0);
  for (int i = 0; i < 50; ++i) {
    const auto [c1, c2] = Crossover(space, a, b, config, rng);
    for (size_t k = 0; k < 7; ++k) {
      const bool same = c1.genes[k] == a.genes[k] && c2.genes[k] == b.genes[k];
      const bool swapped = c1.genes[k] == b.genes[k] && c2.genes[k] == a.genes[k];
      EXPECT_TRUE(same || swapped);
    }
  }
  const auto [s1, s2] = Crossover(space, a, a, config, rng);
  EXPECT_EQ(s1, a);
  EXPECT_EQ(s2, a);
}

TEST(Variation, CrossoverLengthMismatch) {
  const auto space = GenomeSpace::English(5);
  RngStream rng(1, 0);
  try {
    Crossover(space, Letters("alexa", 5), Letters("ale", 3), {}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

size_t Differences(const Genome& a, const Genome& b) {
  size_t n = 0;
  for (size_t i = 0; i < a.size(); ++i) n += a.genes[i] != b.genes[i];
  return n;
}

TEST(Seeding, PartitionAndDeterminism) {
  const auto space = GenomeSpace::English(7);
  const Genome wake = Letters("alexa", 7);
  RngStream rng(1, 0);
  const auto three = SeedGenomes(space, wake, 3, rng);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three[0], wake);
  EXPECT_GE(Differences(three[1], wake), 1u);
  EXPECT_LE(Differences(three[1], wake), 2u);

  RngStream a(8, 0), b(8, 0);
  const auto pa = SeedGenomes(space, wake, 100, a);
  EXPECT_EQ(pa, SeedGenomes(space, wake, 100, b));
  for (size_t i = 1; i <= 50; ++i) {
    EXPECT_GE(Differences(pa[i], wake), 1u) << i;
    EXPECT_LE(Differences(pa[i], wake), 2u) << i;
  }
}

TEST(Seeding, TooFew) {
  RngStream rng(1, 0);
  EXPECT_THROW(SeedGenomes(GenomeSpace::English(5), Letters("alexa", 5), 2, rng), Error);
}

TEST(Space, EnglishLength) {
  EXPECT_EQ(GenomeSpace::EnglishLength(5, 1.5), 7u);
  EXPECT_EQ(GenomeSpace::EnglishLength(8, 1.0), 8u);
}

}  // namespace
}  // namespace fakewake
