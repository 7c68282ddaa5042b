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

#include "fakewake/phonetics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numeric>

#include "fakewake/error.h"

namespace fakewake {
namespace {

const PhoneticTables& T() { return *PhoneticTables::Default(); }

Syllable Only(std::string_view text) {
  const auto word = T().ParsePinyin(text);
  EXPECT_EQ(word.syllables.size(), 1u);
  return word.syllables.front();
}

TEST(Pinyin, ParsesInitialFinalTone) {
  const Syllable s = Only("xiǎo");
  EXPECT_EQ(T().InitialSymbol(s.initial), "x");
  EXPECT_EQ(T().FinalSymbol(s.final), "iao");
  EXPECT_EQ(s.tone, 3);
}

TEST(Pinyin, ZeroInitial) {
  const Syllable s = Only("ài");
  EXPECT_EQ(s.initial, 0);
  EXPECT_EQ(T().FinalSymbol(s.final), "ai");
  EXPECT_EQ(s.tone, 4);
}

TEST(Pinyin, RejectsInvalidPair) {
  try {
    T().ParsePinyin("xāng");
    FAIL() << "expected InvalidCombination";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidCombination);
  }
}

TEST(Pinyin, RejectsUnknownSyllable) {
  try {
    T().ParsePinyin("qqq1");
    FAIL() << "expected UnknownSyllable";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownSyllable);
  }
}

TEST(Pinyin, NumericTonesAndV) {
  EXPECT_EQ(T().ParsePinyin("xiao3 ai4").syllables, T().ParsePinyin("xiǎo ài").syllables);
  EXPECT_EQ(T().ParsePinyin("lv4").syllables, T().ParsePinyin("lǜ").syllables);
}

TEST(Pinyin, ValidateSyllable) {
  EXPECT_TRUE(T().ValidateSyllable(T().InitialIndex("x"), T().FinalIndex("iao")));
  EXPECT_FALSE(T().ValidateSyllable(T().InitialIndex("x"), T().FinalIndex("ang")));
  EXPECT_TRUE(T().ValidateSyllable(0, T().FinalIndex("ai")));
  EXPECT_FALSE(T().ValidateSyllable(99, 1));
}

TEST(Pinyin, ValidityTableSize) {
  size_t pairs = 0;
  for (int i = 0; i < kNumInitials; ++i) pairs += T().ValidFinals(i).size();
  EXPECT_EQ(pairs, 408u);
}

TEST(Pinyin, RenderRoundTrip) {
  for (int i = 0; i < kNumInitials; ++i) {
    for (int f : T().ValidFinals(i)) {
      for (int tone = 1; tone <= 4; ++tone) {
        const Syllable s{i, f, tone};
        const std::string text = T().RenderSyllable(s);
        EXPECT_EQ(Only(text), s) << text;
      }
    }
  }
}

TEST(Phonemes, DistanceIdentityAndBounds) {
  const size_t n = T().num_phonemes();
  EXPECT_EQ(n, 39u);
  for (size_t p = 0; p < n; ++p) {
    for (size_t q = 0; q < n; ++q) {
      const double d = T().PhonemeDistance(static_cast<PhonemeId>(p), static_cast<PhonemeId>(q));
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 1.0);
      EXPECT_DOUBLE_EQ(d, T().PhonemeDistance(static_cast<PhonemeId>(q), static_cast<PhonemeId>(p)));
      if (p == q) EXPECT_EQ(d, 0.0);
    }
  }
}

TEST(Phonemes, VoicingIsCloserThanConsonantVowel) {
  const double sz = T().PhonemeDistance("S", "Z");
  EXPECT_GT(sz, 0.0);
  EXPECT_LT(sz, T().PhonemeDistance("S", "AA"));
}

TEST(Phonemes, MatchesFeatureTable) {
  // Recompute S vs Z directly from the shipped file.
  std::ifstream in(DefaultDataDir() / "phoneme_features.tsv");
  std::string line;
  std::vector<std::string> s_row, z_row;
  std::vector<double> weights;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    size_t start = 0, tab;
    while ((tab = line.find('\t', start)) != std::string::npos) {
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    cols.push_back(line.substr(start));
    if (cols[0] == "@weight")
      for (size_t i = 1; i < cols.size(); ++i) weights.push_back(std::stod(cols[i]));
    if (cols[0] == "S") s_row = cols;
    if (cols[0] == "Z") z_row = cols;
  }
  ASSERT_FALSE(weights.empty());
  double num = 0.0;
  for (size_t i = 0; i < weights.size(); ++i)
    num += weights[i] * std::abs(std::stod(s_row[i + 1]) - std::stod(z_row[i + 1])) / 2.0;
  const double expected = num / std::accumulate(weights.begin(), weights.end(), 0.0);
  EXPECT_NEAR(T().PhonemeDistance("S", "Z"), expected, 1e-12);
}

TEST(Phonemes, UnknownSymbol) {
  try {
    T().PhonemeIndex("QX");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownPhoneme);
  }
}

TEST(G2p, EmptyWord) { EXPECT_TRUE(T().G2p({""}).phonemes.empty()); }

TEST(G2p, LexiconEntry) {
  const auto& entry = T().lexicon().at("alexa");
  EXPECT_EQ(T().G2p({"alexa"}).phonemes, entry);
  EXPECT_EQ(T().RenderPhonemes(T().G2p({"alexa"})), "AH L EH K S AH");
}

TEST(G2p, FallbackByHand) {
  // i -> IH, l -> L, e -> EH, k -> K, s -> S, ur -> ER.
  EXPECT_EQ(T().RenderPhonemes(T().G2p({"ileksur"})), "IH L EH K S ER");
}

TEST(G2p, LongestMatchAndSilentE) {
  EXPECT_EQ(T().RenderPhonemes(T().G2p({"ship"})), "SH IH P");
  EXPECT_EQ(T().RenderPhonemes(T().G2p({"bridge"})), "B R IH D G");
}

TEST(G2p, WordBoundaries) {
  EXPECT_EQ(T().RenderPhonemes(T().G2p({"hey siri"})), "HH EY _ S IH R IY");
  EXPECT_EQ(T().Units(T().G2p({"hey siri"})).size(), 6u);
}

TEST(Mds, IdenticalPoints) {
  const auto emb = MdsEmbed({{0, 0}, {0, 0}});
  EXPECT_EQ(emb[0], emb[1]);
}

TEST(Mds, Equilateral) {
  const auto emb = MdsEmbed({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  EXPECT_NEAR(Norm(emb[0], emb[1]), Norm(emb[1], emb[2]), 1e-9);
  EXPECT_NEAR(Norm(emb[0], emb[1]), Norm(emb[0], emb[2]), 1e-9);
  EXPECT_NEAR(Norm(emb[0], emb[1]), 1.0, 1e-9);
}

TEST(Mds, RecoversPlanarConfiguration) {
  const std::vector<Vec2> pts = {{0, 0}, {3, 0}, {0, 4}, {1, 1}, {-2, 5}};
  std::vector<std::vector<double>> d(pts.size(), std::vector<double>(pts.size()));
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < pts.size(); ++j) d[i][j] = Norm(pts[i], pts[j]);
  const auto emb = MdsEmbed(d);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < pts.size(); ++j) EXPECT_NEAR(Norm(emb[i], emb[j]), d[i][j], 1e-9);
}

TEST(Mds, PhonemeEmbeddingCorrelatesWithDistances) {
  std::vector<double> xs, ys;
  for (size_t p = 0; p < T().num_phonemes(); ++p) {
    for (size_t q = p + 1; q < T().num_phonemes(); ++q) {
      const Unit a{UnitKind::kPhoneme, static_cast<int>(p)}, b{UnitKind::kPhoneme, static_cast<int>(q)};
      xs.push_back(T().UnitDistance(a, b));
      ys.push_back(Norm(T().Embedding(a), T().Embedding(b)));
    }
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  EXPECT_GE(sxy / std::sqrt(sxx * syy), 0.7);
}

TEST(Features, EmptyWordIsZeros) {
  const auto f = T().EncodeFeatures({}, 3);
  EXPECT_EQ(f, std::vector<double>(6, 0.0));
}

TEST(Features, ChineseShape) {
  const auto word = T().ParsePinyin("xiǎo ài tóng xué");
  const auto units = T().Units(word);
  ASSERT_EQ(units.size(), 8u);
  const auto f = T().EncodeFeatures(units, 8);
  ASSERT_EQ(f.size(), 16u);
  for (size_t u = 0; u < 8; ++u) {
    EXPECT_EQ(f[2 * u], T().Embedding(units[u]).x);
    EXPECT_EQ(f[2 * u + 1], T().Embedding(units[u]).y);
  }
}

TEST(Features, AlexaPadding) {
  const auto units = T().Units(T().G2p({"alexa"}));
  const auto f = T().EncodeFeatures(units, 8);
  ASSERT_EQ(f.size(), 16u);
  for (size_t i = 0; i < 2 * units.size(); ++i) EXPECT_NE(f[i], 0.0) << i;
  for (size_t i = 2 * units.size(); i < f.size(); ++i) EXPECT_EQ(f[i], 0.0) << i;
}

TEST(Features, TooManyUnits) {
  const auto units = T().Units(T().G2p({"alexa"}));
  try {
    T().EncodeFeatures(units, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooManyUnits);
  }
}

TEST(Tables, MissingDirectory) {
  try {
    PhoneticTables::Load("/nonexistent/fakewake");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDataError);
  }
}

}  // namespace
}  // namespace fakewake
