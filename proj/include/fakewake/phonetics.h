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

// Language resources: pinyin tables, the phoneme inventory with articulatory
// features, grapheme-to-phoneme conversion and the 2-D unit embeddings used as
// classifier features.
//
// All tables are loaded once and are immutable afterwards; a loaded
// PhoneticTables is safe for unrestricted concurrent use.

#ifndef FAKEWAKE_PHONETICS_H_
#define FAKEWAKE_PHONETICS_H_

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fakewake {

inline constexpr int kNumInitials = 24;  // 23 initials plus the zero initial.
inline constexpr int kNumFinals = 37;    // Indexed 1..37.
inline constexpr int kZeroInitial = 0;

struct Syllable {
  int initial = 0;  // 0..23, 0 = zero initial.
  int final = 1;    // 1..37.
  int tone = 1;     // 1..4.

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

struct ChineseWord {
  std::vector<Syllable> syllables;

  friend bool operator==(const ChineseWord&, const ChineseWord&) = default;
};

// A word over {a..z, space}.
struct LetterWord {
  std::string text;

  friend bool operator==(const LetterWord&, const LetterWord&) = default;
};

// Index into the phoneme inventory; kWordBoundary marks a space between tokens.
using PhonemeId = int;
inline constexpr PhonemeId kWordBoundary = -1;

struct Phoneme {
  std::string symbol;
  std::vector<int8_t> features;  // Ternary: +1 / 0 / -1.
};

struct PhonemeSequence {
  std::vector<PhonemeId> phonemes;

  friend bool operator==(const PhonemeSequence&, const PhonemeSequence&) = default;
};

enum class UnitKind : uint8_t { kInitial, kFinal, kPhoneme };

// A pronunciation unit: an initial, a final, or a phoneme.
struct Unit {
  UnitKind kind = UnitKind::kPhoneme;
  int index = 0;

  friend auto operator<=>(const Unit&, const Unit&) = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double Norm(const Vec2& a, const Vec2& b);

// Classical multidimensional scaling into two dimensions.
//
// `dissimilarity` must be a symmetric k x k matrix with zero diagonal. The
// squared dissimilarities are double centered and the two leading
// eigenvectors (descending eigenvalue) are scaled by the square root of their
// eigenvalues. Each axis is sign-normalized so that its first coordinate with
// magnitude above 1e-12 is positive. Axes with a non-positive eigenvalue are
// padded with zeros.
std::vector<Vec2> MdsEmbed(const std::vector<std::vector<double>>& dissimilarity);

// Default data directory: $FAKEWAKE_DATA_DIR if set, else the bundled one.
std::filesystem::path DefaultDataDir();

class PhoneticTables {
 public:
  // Loads pinyin_units.tsv, pinyin_validity.tsv, phoneme_features.tsv,
  // lexicon.tsv and g2p_rules.tsv from `data_dir`. Throws Error(kDataError).
  static std::shared_ptr<const PhoneticTables> Load(const std::filesystem::path& data_dir);

  // Process-wide tables loaded from DefaultDataDir() on first use.
  static std::shared_ptr<const PhoneticTables> Default();

  // ---- Pinyin ----

  const std::string& InitialSymbol(int initial) const;
  const std::string& FinalSymbol(int final) const;
  int InitialIndex(std::string_view symbol) const;  // -1 when unknown.
  int FinalIndex(std::string_view symbol) const;    // -1 when unknown.

  // True iff (initial, final) is a standard Mandarin pair. Out-of-range
  // indices are invalid.
  bool ValidateSyllable(int initial, int final) const;

  // Valid finals for `initial`, ascending.
  const std::vector<int>& ValidFinals(int initial) const;

  // Parses one tone-marked syllable ("xiǎo"). Numeric tones ("xiao3") and
  // "v" for "ü" are also accepted.
  Syllable ParseSyllable(std::string_view token) const;

  // Parses whitespace-separated syllables. Throws kUnknownSyllable or
  // kInvalidCombination.
  ChineseWord ParsePinyin(std::string_view text) const;

  std::string RenderSyllable(const Syllable& syllable) const;
  std::string RenderWord(const ChineseWord& word) const;

  // ---- Phonemes ----

  size_t num_phonemes() const { return phonemes_.size(); }
  size_t num_phoneme_features() const { return feature_weights_.size(); }
  const Phoneme& phoneme(PhonemeId id) const { return phonemes_.at(static_cast<size_t>(id)); }
  PhonemeId PhonemeIndex(std::string_view symbol) const;  // Throws kUnknownPhoneme.

  // Normalized weighted Hamming distance over ternary feature vectors: each
  // feature contributes weight * |a - b| / 2, divided by the weight total.
  double PhonemeDistance(PhonemeId p, PhonemeId q) const;
  double PhonemeDistance(std::string_view p, std::string_view q) const;

  // Lexicon lookup per space-separated token, longest-match rule fallback
  // otherwise. Tokens are separated by kWordBoundary.
  PhonemeSequence G2p(const LetterWord& word) const;

  // The fallback alone, for one token without spaces.
  std::vector<PhonemeId> G2pFallback(std::string_view token) const;

  const std::map<std::string, std::vector<PhonemeId>, std::less<>>& lexicon() const { return lexicon_; }

  std::string RenderPhonemes(const PhonemeSequence& sequence) const;

  // ---- Units and embeddings ----

  const std::string& UnitSymbol(const Unit& unit) const;

  // Articulatory dissimilarity of two units of the same kind, in [0, 1].
  // Initials and finals use normalized Hamming distance over their binary
  // feature rows; phonemes use PhonemeDistance.
  double UnitDistance(const Unit& a, const Unit& b) const;

  const Vec2& Embedding(const Unit& unit) const;

  // Pronunciation units in order: [initial, final] per character, or the
  // phonemes of the sequence with word boundaries dropped.
  std::vector<Unit> Units(const ChineseWord& word) const;
  std::vector<Unit> Units(const PhonemeSequence& sequence) const;

  // Concatenated unit embeddings, zero-padded to 2 * slots values.
  // Throws kTooManyUnits.
  std::vector<double> EncodeFeatures(std::span<const Unit> units, size_t slots) const;

  // Embedding-space distance between two characters:
  // |emb(init1) - emb(init2)| + |emb(fin1) - emb(fin2)| + tone_penalty * [tone1 != tone2].
  double CharacterDistance(const Syllable& a, const Syllable& b, double tone_penalty) const;

 private:
  PhonemeSequence G2pImpl(std::string_view text) const;

  std::array<std::string, kNumInitials> initial_symbols_;
  std::array<std::string, kNumFinals + 1> final_symbols_;  // [0] unused.
  std::vector<std::vector<int8_t>> initial_features_;
  std::vector<std::vector<int8_t>> final_features_;
  std::array<std::array<bool, kNumFinals + 1>, kNumInitials> valid_{};
  std::array<std::vector<int>, kNumInitials> valid_finals_;

  std::vector<Phoneme> phonemes_;
  std::vector<double> feature_weights_;
  std::map<std::string, PhonemeId, std::less<>> phoneme_index_;
  std::vector<std::vector<double>> phoneme_distance_;

  std::map<std::string, std::vector<PhonemeId>, std::less<>> lexicon_;

  struct G2pRule {
    std::string grapheme;
    std::vector<PhonemeId> phonemes;
    int priority = 0;
  };
  std::vector<G2pRule> rules_;  // Sorted by (length desc, priority desc, grapheme asc).

  std::vector<Vec2> initial_embedding_;
  std::vector<Vec2> final_embedding_;  // [0] unused.
  std::vector<Vec2> phoneme_embedding_;
};

}  // namespace fakewake

#endif  // FAKEWAKE_PHONETICS_H_
