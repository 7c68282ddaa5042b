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

#ifndef FAKEWAKE_DOMAIN_H_
#define FAKEWAKE_DOMAIN_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fakewake/distance.h"
#include "fakewake/genome.h"
#include "fakewake/phonetics.h"

namespace fakewake {

std::string_view LanguageName(Language language);
Language ParseLanguage(std::string_view name);  // "zh" or "en"; throws kConfigError.

// Everything the search, oracle and explanation stages need to know about
// words of one language relative to one wake word.
//
// Word text is canonical: tone-marked pinyin separated by single spaces for
// Chinese, lower-case letters separated by single spaces for English.
class WordDomain {
 public:
  // Throws kConfigError (with the parser's diagnostic) when the wake word
  // does not parse.
  WordDomain(std::shared_ptr<const PhoneticTables> tables, Language language, std::string_view wake_word,
             double english_length_ratio = 1.5, size_t slots = 0, DistanceConfig distance = {});

  Language language() const { return language_; }
  const PhoneticTables& tables() const { return *tables_; }
  std::shared_ptr<const PhoneticTables> shared_tables() const { return tables_; }
  const GenomeSpace& space() const { return space_; }
  const Genome& wake_genome() const { return wake_genome_; }
  const std::string& wake_text() const { return wake_text_; }
  const std::vector<Unit>& wake_units() const { return wake_units_; }
  const DistanceConfig& distance_config() const { return distance_; }

  // Feature slots per word: 2 per character for Chinese, twice the genome
  // length for English unless configured.
  size_t slots() const { return slots_; }

  // Canonical text, or nullopt for an all-space English genome.
  std::optional<std::string> Decode(const Genome& genome) const;

  // Pronunciation units of a word. Throws kParseFailure.
  std::vector<Unit> UnitsOf(std::string_view text) const;

  // Dissimilarity to the wake word. Throws kParseFailure.
  double Dissimilarity(std::string_view text) const;

  std::vector<double> Features(std::string_view text) const;

  // Canonicalizes free text (whitespace, case). Throws kParseFailure.
  std::string Canonical(std::string_view text) const;

 private:
  std::shared_ptr<const PhoneticTables> tables_;
  Language language_;
  DistanceConfig distance_;
  GenomeSpace space_;
  Genome wake_genome_;
  std::string wake_text_;
  std::vector<Unit> wake_units_;
  ChineseWord wake_chinese_;
  PhonemeSequence wake_phonemes_;
  size_t slots_ = 0;
};

}  // namespace fakewake

#endif  // FAKEWAKE_DOMAIN_H_
