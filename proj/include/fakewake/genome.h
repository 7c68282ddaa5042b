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

// Fixed-length integer encodings of candidate words and the variation
// operators acting on them.
//
// Chinese: three genes per character (initial 0..23, final 1..37, tone 1..4).
// English: one gene per symbol, 1..26 for a..z and 27 for a space.

#ifndef FAKEWAKE_GENOME_H_
#define FAKEWAKE_GENOME_H_

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "fakewake/phonetics.h"
#include "fakewake/rng.h"

namespace fakewake {

enum class Language { kChinese, kEnglish };

inline constexpr int kSpaceGene = 27;

struct Genome {
  std::vector<int> genes;

  size_t size() const { return genes.size(); }
  friend bool operator==(const Genome&, const Genome&) = default;
};

struct VariationConfig {
  double mutation_rate = 0.1;   // Per gene.
  double crossover_rate = 0.9;  // Per parent pair.

  void Validate() const;
};

// Describes the genes of one language at one length.
class GenomeSpace {
 public:
  static GenomeSpace Chinese(std::shared_ptr<const PhoneticTables> tables, size_t characters);
  static GenomeSpace English(size_t length);

  // floor(ratio * letters), at least `letters`.
  static size_t EnglishLength(size_t wake_word_letters, double ratio = 1.5);

  Language language() const { return language_; }
  size_t length() const { return length_; }
  int Min(size_t gene) const;
  int Max(size_t gene) const;
  bool InRange(const Genome& genome) const;

  // Chinese genomes are repaired; English genomes are returned unchanged.
  Genome Repair(Genome genome) const;

  // Uniform over the gene ranges, then repaired.
  Genome Random(RngStream& rng) const;

  const PhoneticTables* tables() const { return tables_.get(); }

 private:
  Language language_ = Language::kEnglish;
  size_t length_ = 0;
  std::shared_ptr<const PhoneticTables> tables_;
};

Genome EncodeChinese(const ChineseWord& word);

// Throws kInvalidCombination when any (initial, final) pair is invalid.
ChineseWord DecodeChinese(const PhoneticTables& tables, const Genome& genome);

// Letters then trailing spaces up to `length`. Throws kConfigError when the
// word is longer than `length` or contains symbols outside a..z and space.
Genome EncodeEnglish(const LetterWord& word, size_t length);

// Maps genes to letters, trims leading/trailing spaces and collapses internal
// runs of spaces. Throws kAllSpaces.
LetterWord DecodeEnglish(const Genome& genome);

// Replaces each invalid final by the valid final (for that initial) nearest in
// embedding space; ties go to the lowest index. Idempotent.
Genome RepairChinese(const PhoneticTables& tables, Genome genome);

// Each gene is resampled uniformly from its range with probability
// mutation_rate; the result is repaired.
Genome Mutate(const GenomeSpace& space, const Genome& genome, const VariationConfig& config, RngStream& rng);

// Single-point crossover: children swap tails after `cut` (1 <= cut < length).
std::pair<Genome, Genome> CrossoverAt(const GenomeSpace& space, const Genome& a, const Genome& b, size_t cut);

// With probability crossover_rate, crosses at a uniform cut in [1, length-1];
// otherwise returns copies of the parents. Throws kLengthMismatch.
std::pair<Genome, Genome> Crossover(const GenomeSpace& space, const Genome& a, const Genome& b,
                                    const VariationConfig& config, RngStream& rng);

// Initial population: the wake word, ceil((count-1)/2) perturbations of it
// differing in one or two gene positions, and uniformly random genomes for
// the remainder. Throws kConfigError when count < 3.
std::vector<Genome> SeedGenomes(const GenomeSpace& space, const Genome& wake_word, size_t count,
                                RngStream& rng);

}  // namespace fakewake

#endif  // FAKEWAKE_GENOME_H_
