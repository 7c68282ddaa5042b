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

#include <algorithm>
#include <cmath>
#include <limits>

#include "fakewake/error.h"

namespace fakewake {
namespace {

size_t HammingGenes(const Genome& a, const Genome& b) {
  size_t n = 0;
  for (size_t i = 0; i < a.size(); ++i) n += a.genes[i] != b.genes[i];
  return n;
}

}  // namespace

void VariationConfig::Validate() const {
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
    throw Error(ErrorCode::kConfigError, "mutation_rate must lie in [0, 1]");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
    throw Error(ErrorCode::kConfigError, "crossover_rate must lie in [0, 1]");
}

GenomeSpace GenomeSpace::Chinese(std::shared_ptr<const PhoneticTables> tables, size_t characters) {
  if (characters == 0) throw Error(ErrorCode::kConfigError, "a Chinese word needs at least one character");
  GenomeSpace s;
  s.language_ = Language::kChinese;
  s.length_ = 3 * characters;
  s.tables_ = std::move(tables);
  return s;
}

GenomeSpace GenomeSpace::English(size_t length) {
  if (length == 0) throw Error(ErrorCode::kConfigError, "an English genome needs at least one gene");
  GenomeSpace s;
  s.language_ = Language::kEnglish;
  s.length_ = length;
  return s;
}

size_t GenomeSpace::EnglishLength(size_t wake_word_letters, double ratio) {
  const auto scaled = static_cast<size_t>(std::floor(ratio * static_cast<double>(wake_word_letters)));
  return std::max(scaled, wake_word_letters);
}

int GenomeSpace::Min(size_t gene) const {
  if (language_ == Language::kEnglish) return 1;
  return gene % 3 == 0 ? 0 : 1;
}

int GenomeSpace::Max(size_t gene) const {
  if (language_ == Language::kEnglish) return kSpaceGene;
  switch (gene % 3) {
    case 0:
      return kNumInitials - 1;
    case 1:
      return kNumFinals;
    default:
      return 4;
  }
}

bool GenomeSpace::InRange(const Genome& genome) const {
  if (genome.size() != length_) return false;
  for (size_t i = 0; i < length_; ++i)
    if (genome.genes[i] < Min(i) || genome.genes[i] > Max(i)) return false;
  return true;
}

Genome GenomeSpace::Repair(Genome genome) const {
  if (language_ == Language::kChinese) return RepairChinese(*tables_, std::move(genome));
  return genome;
}

Genome GenomeSpace::Random(RngStream& rng) const {
  Genome g;
  g.genes.resize(length_);
  for (size_t i = 0; i < length_; ++i) g.genes[i] = rng.UniformInt(Min(i), Max(i));
  return Repair(std::move(g));
}

Genome EncodeChinese(const ChineseWord& word) {
  Genome g;
  for (const auto& s : word.syllables) {
    g.genes.push_back(s.initial);
    g.genes.push_back(s.final);
    g.genes.push_back(s.tone);
  }
  return g;
}

ChineseWord DecodeChinese(const PhoneticTables& tables, const Genome& genome) {
  if (genome.size() == 0 || genome.size() % 3 != 0)
    throw Error(ErrorCode::kLengthMismatch, "Chinese genome length must be a positive multiple of 3");
  ChineseWord word;
  for (size_t i = 0; i < genome.size(); i += 3) {
    Syllable s{genome.genes[i], genome.genes[i + 1], genome.genes[i + 2]};
    if (s.tone < 1 || s.tone > 4) throw Error(ErrorCode::kInvalidCombination, "tone out of range");
    if (!tables.ValidateSyllable(s.initial, s.final)) {
      const std::string ini = s.initial >= 0 && s.initial < kNumInitials ? tables.InitialSymbol(s.initial) : "?";
      const std::string fin = s.final >= 1 && s.final <= kNumFinals ? tables.FinalSymbol(s.final) : "?";
      throw Error(ErrorCode::kInvalidCombination, "character " + std::to_string(i / 3 + 1) + " pairs " + ini +
                                                      " with " + fin);
    }
    word.syllables.push_back(s);
  }
  return word;
}

Genome EncodeEnglish(const LetterWord& word, size_t length) {
  if (word.text.size() > length)
    throw Error(ErrorCode::kConfigError,
                "'" + word.text + "' is longer than the genome length " + std::to_string(length));
  Genome g;
  for (char c : word.text) {
    if (c == ' ') {
      g.genes.push_back(kSpaceGene);
    } else if (c >= 'a' && c <= 'z') {
      g.genes.push_back(c - 'a' + 1);
    } else {
      throw Error(ErrorCode::kConfigError, "'" + word.text + "' has a symbol outside a-z and space");
    }
  }
  g.genes.resize(length, kSpaceGene);
  return g;
}

LetterWord DecodeEnglish(const Genome& genome) {
  std::string out;
  bool pending_space = false;
  for (int gene : genome.genes) {
    if (gene == kSpaceGene) {
      pending_space = !out.empty();
      continue;
    }
    if (gene < 1 || gene > kSpaceGene) throw Error(ErrorCode::kConfigError, "English gene out of range");
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>('a' + gene - 1);
  }
  if (out.empty()) throw Error(ErrorCode::kAllSpaces, "genome decodes to spaces only");
  return LetterWord{out};
}

Genome RepairChinese(const PhoneticTables& tables, Genome genome) {
  for (size_t i = 0; i + 2 < genome.size(); i += 3) {
    const int initial = genome.genes[i];
    const int final = genome.genes[i + 1];
    if (tables.ValidateSyllable(initial, final)) continue;
    const Vec2& from = tables.Embedding({UnitKind::kFinal, final});
    int best = -1;
    double best_distance = std::numeric_limits<double>::infinity();
    for (int candidate : tables.ValidFinals(initial)) {
      const double d = Norm(from, tables.Embedding({UnitKind::kFinal, candidate}));
      if (d < best_distance) {
        best_distance = d;
        best = candidate;
      }
    }
    if (best < 0) throw Error(ErrorCode::kInvalidCombination, "initial has no valid finals");
    genome.genes[i + 1] = best;
  }
  return genome;
}

Genome Mutate(const GenomeSpace& space, const Genome& genome, const VariationConfig& config, RngStream& rng) {
  Genome out = genome;
  for (size_t i = 0; i < out.size(); ++i)
    if (rng.Bernoulli(config.mutation_rate)) out.genes[i] = rng.UniformInt(space.Min(i), space.Max(i));
  return space.Repair(std::move(out));
}

std::pair<Genome, Genome> CrossoverAt(const GenomeSpace& space, const Genome& a, const Genome& b, size_t cut) {
  if (a.size() != b.size()) throw Error(ErrorCode::kLengthMismatch, "parents differ in length");
  Genome c1 = a;
  Genome c2 = b;
  for (size_t i = cut; i < a.size(); ++i) std::swap(c1.genes[i], c2.genes[i]);
  return {space.Repair(std::move(c1)), space.Repair(std::move(c2))};
}

std::pair<Genome, Genome> Crossover(const GenomeSpace& space, const Genome& a, const Genome& b,
                                    const VariationConfig& config, RngStream& rng) {
  if (a.size() != b.size()) throw Error(ErrorCode::kLengthMismatch, "parents differ in length");
  if (a.size() < 2 || !rng.Bernoulli(config.crossover_rate)) return {a, b};
  const auto cut = static_cast<size_t>(rng.UniformInt(1, static_cast<int>(a.size()) - 1));
  return CrossoverAt(space, a, b, cut);
}

std::vector<Genome> SeedGenomes(const GenomeSpace& space, const Genome& wake_word, size_t count, RngStream& rng) {
  if (count < 3) throw Error(ErrorCode::kConfigError, "initial population needs at least 3 members");
  std::vector<Genome> population;
  population.reserve(count);
  population.push_back(wake_word);

  const size_t perturbations = count / 2;  // ceil((count - 1) / 2)
  const size_t length = space.length();
  while (population.size() < 1 + perturbations) {
    Genome g = wake_word;
    const int changes = length >= 2 ? rng.UniformInt(1, 2) : 1;
    for (int c = 0; c < changes; ++c) {
      const size_t pos = rng.UniformIndex(length);
      const int lo = space.Min(pos);
      const int hi = space.Max(pos);
      if (hi == lo) continue;
      // Resample to a different value.
      int v = rng.UniformInt(lo, hi - 1);
      if (v >= wake_word.genes[pos]) ++v;
      g.genes[pos] = v;
    }
    g = space.Repair(std::move(g));
    const size_t diff = HammingGenes(g, wake_word);
    // Repair can touch a second gene; keep only perturbations within two genes.
    if (diff >= 1 && diff <= 2) population.push_back(std::move(g));
  }
  while (population.size() < count) population.push_back(space.Random(rng));
  return population;
}

}  // namespace fakewake
