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

#include "fakewake/domain.h"

#include "fakewake/error.h"
#include "fakewake/text.h"

namespace fakewake {
namespace {

std::string CanonicalLetters(std::string_view text) {
  std::string lowered;
  for (char c : text) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (IsSpace(c)) c = ' ';
    if (c != ' ' && (c < 'a' || c > 'z'))
      throw Error(ErrorCode::kParseFailure, "'" + std::string(text) + "' has a symbol outside a-z and space");
    lowered += c;
  }
  std::string out = JoinWords(SplitWhitespace(lowered));
  if (out.empty()) throw Error(ErrorCode::kParseFailure, "empty English word");
  return out;
}

}  // namespace

std::string_view LanguageName(Language language) { return language == Language::kChinese ? "zh" : "en"; }

Language ParseLanguage(std::string_view name) {
  if (name == "zh") return Language::kChinese;
  if (name == "en") return Language::kEnglish;
  throw Error(ErrorCode::kConfigError, "language must be 'zh' or 'en', got '" + std::string(name) + "'");
}

WordDomain::WordDomain(std::shared_ptr<const PhoneticTables> tables, Language language, std::string_view wake_word,
                       double english_length_ratio, size_t slots, DistanceConfig distance)
    : tables_(std::move(tables)), language_(language), distance_(distance) {
  distance_.Validate();
  try {
    if (language_ == Language::kChinese) {
      wake_chinese_ = tables_->ParsePinyin(wake_word);
      wake_text_ = tables_->RenderWord(wake_chinese_);
      space_ = GenomeSpace::Chinese(tables_, wake_chinese_.syllables.size());
      wake_genome_ = EncodeChinese(wake_chinese_);
      wake_units_ = tables_->Units(wake_chinese_);
      slots_ = slots > 0 ? slots : 2 * wake_chinese_.syllables.size();
    } else {
      if (!(english_length_ratio >= 1.0)) throw Error(ErrorCode::kConfigError, "length ratio must be >= 1");
      wake_text_ = CanonicalLetters(wake_word);
      const size_t length = GenomeSpace::EnglishLength(wake_text_.size(), english_length_ratio);
      space_ = GenomeSpace::English(length);
      wake_genome_ = EncodeEnglish(LetterWord{wake_text_}, length);
      wake_phonemes_ = tables_->G2p(LetterWord{wake_text_});
      wake_units_ = tables_->Units(wake_phonemes_);
      slots_ = slots > 0 ? slots : 2 * length;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    throw Error(ErrorCode::kConfigError, "invalid wake word: " + std::string(e.what()));
  }
  if (wake_units_.size() > slots_)
    throw Error(ErrorCode::kConfigError, "wake word has more units than feature slots");
}

std::optional<std::string> WordDomain::Decode(const Genome& genome) const {
  if (language_ == Language::kChinese) return tables_->RenderWord(DecodeChinese(*tables_, genome));
  try {
    return DecodeEnglish(genome).text;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kAllSpaces) return std::nullopt;
    throw;
  }
}

std::string WordDomain::Canonical(std::string_view text) const {
  if (language_ == Language::kEnglish) return CanonicalLetters(text);
  try {
    return tables_->RenderWord(tables_->ParsePinyin(text));
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  }
}

std::vector<Unit> WordDomain::UnitsOf(std::string_view text) const {
  if (language_ == Language::kEnglish) return tables_->Units(tables_->G2p(LetterWord{CanonicalLetters(text)}));
  try {
    return tables_->Units(tables_->ParsePinyin(text));
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  }
}

double WordDomain::Dissimilarity(std::string_view text) const {
  if (language_ == Language::kEnglish)
    return EnglishDist(*tables_, tables_->G2p(LetterWord{CanonicalLetters(text)}), wake_phonemes_, distance_);
  ChineseWord word;
  try {
    word = tables_->ParsePinyin(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseFailure, e.what());
  }
  if (word.syllables.size() != wake_chinese_.syllables.size())
    throw Error(ErrorCode::kParseFailure, "'" + std::string(text) + "' has a different character count");
  return ChineseDist(*tables_, word, wake_chinese_, distance_);
}

std::vector<double> WordDomain::Features(std::string_view text) const {
  const auto units = UnitsOf(text);
  return tables_->EncodeFeatures(units, slots_);
}

}  // namespace fakewake
