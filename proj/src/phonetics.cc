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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "fakewake/error.h"
#include "fakewake/text.h"

#ifndef FAKEWAKE_DEFAULT_DATA_DIR
#define FAKEWAKE_DEFAULT_DATA_DIR "data"
#endif

namespace fakewake {
namespace {

using Rows = std::vector<std::vector<std::string>>;

// Reads a tab-separated file, skipping blank lines and '#' comments.
Rows ReadTsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kDataError, "cannot open " + path.string());
  Rows rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(SplitOn(line, '\t'));
  }
  return rows;
}

double NormalizedHamming(const std::vector<int8_t>& a, const std::vector<int8_t>& b) {
  int differing = 0;
  for (size_t i = 0; i < a.size(); ++i) differing += a[i] != b[i];
  return a.empty() ? 0.0 : static_cast<double>(differing) / static_cast<double>(a.size());
}

std::vector<std::vector<double>> HammingMatrix(const std::vector<std::vector<int8_t>>& rows) {
  const size_t n = rows.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = NormalizedHamming(rows[i], rows[j]);
  return d;
}

struct ToneVowel {
  std::string_view marked;
  char base;  // 'v' stands for ü.
  int tone;
};

constexpr ToneVowel kToneVowels[] = {
    {"ā", 'a', 1}, {"á", 'a', 2}, {"ǎ", 'a', 3}, {"à", 'a', 4},
    {"ē", 'e', 1}, {"é", 'e', 2}, {"ě", 'e', 3}, {"è", 'e', 4},
    {"ī", 'i', 1}, {"í", 'i', 2}, {"ǐ", 'i', 3}, {"ì", 'i', 4},
    {"ō", 'o', 1}, {"ó", 'o', 2}, {"ǒ", 'o', 3}, {"ò", 'o', 4},
    {"ū", 'u', 1}, {"ú", 'u', 2}, {"ǔ", 'u', 3}, {"ù", 'u', 4},
    {"ǖ", 'v', 1}, {"ǘ", 'v', 2}, {"ǚ", 'v', 3}, {"ǜ", 'v', 4},
};

// Converts an ASCII-with-'v' final spelling to the table's symbol (ü forms).
std::string WithUmlaut(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == 'v') {
      out += "ü";
    } else {
      out += c;
    }
  }
  return out;
}

std::string_view MarkedVowel(char base, int tone) {
  for (const auto& tv : kToneVowels)
    if (tv.base == base && tv.tone == tone) return tv.marked;
  return {};
}

bool IsApicalInitial(std::string_view s) {
  return s == "zh" || s == "ch" || s == "sh" || s == "r" || s == "z" || s == "c" || s == "s";
}

bool WritesUmlautAsU(std::string_view s) { return s == "j" || s == "q" || s == "x" || s == "y"; }

}  // namespace

double Norm(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<Vec2> MdsEmbed(const std::vector<std::vector<double>>& dissimilarity) {
  const auto k = static_cast<Eigen::Index>(dissimilarity.size());
  std::vector<Vec2> out(static_cast<size_t>(k));
  if (k == 0) return out;
  Eigen::MatrixXd sq(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (static_cast<Eigen::Index>(dissimilarity[i].size()) != k)
      throw Error(ErrorCode::kShapeMismatch, "dissimilarity matrix is not square");
    for (Eigen::Index j = 0; j < k; ++j) {
      const double d = dissimilarity[i][j];
      sq(i, j) = d * d;
    }
  }
  const Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(k, k) - Eigen::MatrixXd::Constant(k, k, 1.0 / static_cast<double>(k));
  const Eigen::MatrixXd gram = -0.5 * centering * sq * centering;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  // Eigen returns ascending eigenvalues.
  for (int axis = 0; axis < 2 && axis < k; ++axis) {
    const Eigen::Index col = k - 1 - axis;
    const double lambda = solver.eigenvalues()(col);
    if (!(lambda > 1e-12)) continue;
    Eigen::VectorXd v = solver.eigenvectors().col(col) * std::sqrt(lambda);
    for (Eigen::Index i = 0; i < k; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    for (Eigen::Index i = 0; i < k; ++i) (axis == 0 ? out[i].x : out[i].y) = v(i);
  }
  return out;
}

std::filesystem::path DefaultDataDir() {
  if (const char* env = std::getenv("FAKEWAKE_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return FAKEWAKE_DEFAULT_DATA_DIR;
}

std::shared_ptr<const PhoneticTables> PhoneticTables::Default() {
  static std::once_flag once;
  static std::shared_ptr<const PhoneticTables> tables;
  std::call_once(once, [] { tables = Load(DefaultDataDir()); });
  return tables;
}

std::shared_ptr<const PhoneticTables> PhoneticTables::Load(const std::filesystem::path& data_dir) {
  auto t = std::make_shared<PhoneticTables>();

  // Pinyin units: kind, index, symbol, +/- features.
  int seen_initials = 0;
  int seen_finals = 0;
  t->initial_features_.assign(kNumInitials, {});
  t->final_features_.assign(kNumFinals + 1, {});
  for (const auto& row : ReadTsv(data_dir / "pinyin_units.tsv")) {
    if (row.size() < 4) throw Error(ErrorCode::kDataError, "pinyin_units.tsv: short row");
    const int index = std::stoi(row[1]);
    std::vector<int8_t> features;
    for (size_t i = 3; i < row.size(); ++i) features.push_back(row[i] == "+" ? 1 : -1);
    if (row[0] == "initial" && index >= 0 && index < kNumInitials) {
      t->initial_symbols_[index] = row[2];
      t->initial_features_[index] = std::move(features);
      ++seen_initials;
    } else if (row[0] == "final" && index >= 1 && index <= kNumFinals) {
      t->final_symbols_[index] = row[2];
      t->final_features_[index] = std::move(features);
      ++seen_finals;
    } else {
      throw Error(ErrorCode::kDataError, "pinyin_units.tsv: bad row for " + row[2]);
    }
  }
  if (seen_initials != kNumInitials || seen_finals != kNumFinals)
    throw Error(ErrorCode::kDataError, "pinyin_units.tsv: expected 24 initials and 37 finals");

  for (const auto& row : ReadTsv(data_dir / "pinyin_validity.tsv")) {
    if (row.size() < 2) throw Error(ErrorCode::kDataError, "pinyin_validity.tsv: short row");
    const int i = t->InitialIndex(row[0]);
    const int f = t->FinalIndex(row[1]);
    if (i < 0 || f < 0) throw Error(ErrorCode::kDataError, "pinyin_validity.tsv: unknown unit " + row[0] + row[1]);
    t->valid_[i][f] = true;
  }
  for (int i = 0; i < kNumInitials; ++i)
    for (int f = 1; f <= kNumFinals; ++f)
      if (t->valid_[i][f]) t->valid_finals_[i].push_back(f);

  // Phoneme features: header row, @weight row, then one row per phoneme.
  const Rows phoneme_rows = ReadTsv(data_dir / "phoneme_features.tsv");
  for (const auto& row : phoneme_rows) {
    if (row.empty() || row[0] == "symbol") continue;
    if (row[0] == "@weight") {
      for (size_t i = 1; i < row.size(); ++i) t->feature_weights_.push_back(std::stod(row[i]));
      continue;
    }
    Phoneme p{row[0], {}};
    for (size_t i = 1; i < row.size(); ++i) p.features.push_back(static_cast<int8_t>(std::stoi(row[i])));
    t->phoneme_index_[p.symbol] = static_cast<PhonemeId>(t->phonemes_.size());
    t->phonemes_.push_back(std::move(p));
  }
  if (t->phonemes_.empty()) throw Error(ErrorCode::kDataError, "phoneme_features.tsv: no phonemes");
  const size_t dims = t->phonemes_.front().features.size();
  if (t->feature_weights_.empty()) t->feature_weights_.assign(dims, 1.0);
  for (const auto& p : t->phonemes_)
    if (p.features.size() != dims || t->feature_weights_.size() != dims)
      throw Error(ErrorCode::kDataError, "phoneme_features.tsv: inconsistent feature count at " + p.symbol);
  double weight_total = 0.0;
  for (double w : t->feature_weights_) weight_total += w;
  if (!(weight_total > 0.0)) throw Error(ErrorCode::kDataError, "phoneme_features.tsv: weights sum to zero");

  const size_t n = t->phonemes_.size();
  t->phoneme_distance_.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      double d = 0.0;
      for (size_t f = 0; f < dims; ++f)
        d += t->feature_weights_[f] * std::abs(t->phonemes_[i].features[f] - t->phonemes_[j].features[f]) / 2.0;
      t->phoneme_distance_[i][j] = t->phoneme_distance_[j][i] = d / weight_total;
    }
  }

  auto parse_phonemes = [&](const std::string& list, const std::string& where) {
    std::vector<PhonemeId> ids;
    for (const auto& sym : SplitWhitespace(list)) {
      auto it = t->phoneme_index_.find(sym);
      if (it == t->phoneme_index_.end()) throw Error(ErrorCode::kDataError, where + ": unknown phoneme " + sym);
      ids.push_back(it->second);
    }
    return ids;
  };

  for (const auto& row : ReadTsv(data_dir / "lexicon.tsv")) {
    if (row.size() < 2) throw Error(ErrorCode::kDataError, "lexicon.tsv: short row");
    t->lexicon_[row[0]] = parse_phonemes(row[1], "lexicon.tsv");
  }
  for (const auto& row : ReadTsv(data_dir / "g2p_rules.tsv")) {
    if (row.size() < 3) throw Error(ErrorCode::kDataError, "g2p_rules.tsv: short row");
    t->rules_.push_back({row[0], parse_phonemes(row[1], "g2p_rules.tsv"), std::stoi(row[2])});
  }
  std::sort(t->rules_.begin(), t->rules_.end(), [](const G2pRule& a, const G2pRule& b) {
    if (a.grapheme.size() != b.grapheme.size()) return a.grapheme.size() > b.grapheme.size();
    if (a.priority != b.priority) return a.priority > b.priority;
    return a.grapheme < b.grapheme;
  });

  t->initial_embedding_ = MdsEmbed(HammingMatrix(t->initial_features_));
  {
    std::vector<std::vector<int8_t>> rows(t->final_features_.begin() + 1, t->final_features_.end());
    auto emb = MdsEmbed(HammingMatrix(rows));
    t->final_embedding_.assign(1, Vec2{});
    t->final_embedding_.insert(t->final_embedding_.end(), emb.begin(), emb.end());
  }
  t->phoneme_embedding_ = MdsEmbed(t->phoneme_distance_);
  return t;
}

const std::string& PhoneticTables::InitialSymbol(int initial) const {
  return initial_symbols_.at(static_cast<size_t>(initial));
}

const std::string& PhoneticTables::FinalSymbol(int final) const {
  if (final < 1 || final > kNumFinals) throw Error(ErrorCode::kUnknownSyllable, "final index out of range");
  return final_symbols_[static_cast<size_t>(final)];
}

int PhoneticTables::InitialIndex(std::string_view symbol) const {
  for (int i = 0; i < kNumInitials; ++i)
    if (initial_symbols_[i] == symbol) return i;
  return -1;
}

int PhoneticTables::FinalIndex(std::string_view symbol) const {
  for (int f = 1; f <= kNumFinals; ++f)
    if (final_symbols_[f] == symbol) return f;
  return -1;
}

bool PhoneticTables::ValidateSyllable(int initial, int final) const {
  if (initial < 0 || initial >= kNumInitials || final < 1 || final > kNumFinals) return false;
  return valid_[initial][final];
}

const std::vector<int>& PhoneticTables::ValidFinals(int initial) const {
  return valid_finals_.at(static_cast<size_t>(initial));
}

Syllable PhoneticTables::ParseSyllable(std::string_view token) const {
  const std::string original(token);
  std::string base;
  int tone = 0;
  int marks = 0;
  size_t i = 0;
  while (i < token.size()) {
    bool matched = false;
    for (const auto& tv : kToneVowels) {
      if (token.substr(i).starts_with(tv.marked)) {
        base += tv.base;
        tone = tv.tone;
        ++marks;
        i += tv.marked.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (token.substr(i).starts_with("ü")) {
      base += 'v';
      i += std::string_view("ü").size();
      continue;
    }
    const char c = token[i];
    if (c >= '1' && c <= '4' && i + 1 == token.size()) {
      tone = c - '0';
      ++marks;
    } else if (c >= 'A' && c <= 'Z') {
      base += static_cast<char>(c - 'A' + 'a');
    } else if (c >= 'a' && c <= 'z') {
      base += c;
    } else {
      throw Error(ErrorCode::kUnknownSyllable, "unexpected character in '" + original + "'");
    }
    ++i;
  }
  if (marks != 1) throw Error(ErrorCode::kUnknownSyllable, "'" + original + "' needs exactly one tone (1-4)");

  std::string initial = "∅";
  std::string_view rest = base;
  for (std::string_view two : {"zh", "ch", "sh"}) {
    if (rest.starts_with(two)) {
      initial = std::string(two);
      break;
    }
  }
  if (initial == "∅" && !rest.empty() && std::string_view("bpmfdtnlgkhjqxrzcsyw").find(rest[0]) != std::string_view::npos)
    initial = std::string(1, rest[0]);
  if (initial != "∅") rest.remove_prefix(initial.size());
  if (rest.empty()) throw Error(ErrorCode::kUnknownSyllable, "'" + original + "' has no final");

  std::string final_spelling(rest);
  if (WritesUmlautAsU(initial) && final_spelling[0] == 'u') final_spelling[0] = 'v';
  if (IsApicalInitial(initial) && final_spelling == "i") final_spelling = "-i";
  const int f = FinalIndex(WithUmlaut(final_spelling));
  const int ini = InitialIndex(initial);
  if (f < 0 || ini < 0) throw Error(ErrorCode::kUnknownSyllable, "cannot decompose '" + original + "'");
  if (!ValidateSyllable(ini, f))
    throw Error(ErrorCode::kInvalidCombination,
                "'" + original + "' combines initial " + initial + " with final " + FinalSymbol(f));
  return Syllable{ini, f, tone};
}

ChineseWord PhoneticTables::ParsePinyin(std::string_view text) const {
  ChineseWord word;
  for (const auto& token : SplitWhitespace(text)) word.syllables.push_back(ParseSyllable(token));
  if (word.syllables.empty()) throw Error(ErrorCode::kUnknownSyllable, "empty pinyin text");
  return word;
}

std::string PhoneticTables::RenderSyllable(const Syllable& s) const {
  const std::string& ini = InitialSymbol(s.initial);
  std::string spelling = FinalSymbol(s.final);
  if (spelling == "-i") spelling = "i";
  // Work on an ASCII spelling with 'v' for ü, then restore.
  std::string ascii;
  for (size_t i = 0; i < spelling.size();) {
    if (std::string_view(spelling).substr(i).starts_with("ü")) {
      ascii += 'v';
      i += std::string_view("ü").size();
    } else {
      ascii += spelling[i++];
    }
  }
  if (WritesUmlautAsU(ini) && ascii[0] == 'v') ascii[0] = 'u';

  size_t mark = std::string::npos;
  if (auto a = ascii.find('a'); a != std::string::npos) {
    mark = a;
  } else if (auto e = ascii.find('e'); e != std::string::npos) {
    mark = e;
  } else if (auto ou = ascii.find("ou"); ou != std::string::npos) {
    mark = ou;
  } else {
    for (size_t i = ascii.size(); i-- > 0;) {
      if (std::string_view("iouv").find(ascii[i]) != std::string_view::npos) {
        mark = i;
        break;
      }
    }
  }
  std::string out = ini == "∅" ? "" : ini;
  for (size_t i = 0; i < ascii.size(); ++i) {
    if (i == mark) {
      out += MarkedVowel(ascii[i], s.tone);
    } else if (ascii[i] == 'v') {
      out += "ü";
    } else {
      out += ascii[i];
    }
  }
  return out;
}

std::string PhoneticTables::RenderWord(const ChineseWord& word) const {
  std::string out;
  for (size_t i = 0; i < word.syllables.size(); ++i) {
    if (i > 0) out += ' ';
    out += RenderSyllable(word.syllables[i]);
  }
  return out;
}

PhonemeId PhoneticTables::PhonemeIndex(std::string_view symbol) const {
  auto it = phoneme_index_.find(symbol);
  if (it == phoneme_index_.end()) throw Error(ErrorCode::kUnknownPhoneme, std::string(symbol));
  return it->second;
}

double PhoneticTables::PhonemeDistance(PhonemeId p, PhonemeId q) const {
  const auto n = static_cast<PhonemeId>(phonemes_.size());
  if (p < 0 || q < 0 || p >= n || q >= n) throw Error(ErrorCode::kUnknownPhoneme, "phoneme id out of range");
  return phoneme_distance_[p][q];
}

double PhoneticTables::PhonemeDistance(std::string_view p, std::string_view q) const {
  return PhonemeDistance(PhonemeIndex(p), PhonemeIndex(q));
}

std::vector<PhonemeId> PhoneticTables::G2pFallback(std::string_view token) const {
  // A final e after a consonant is silent when an earlier vowel carries the
  // syllable ("bridge", "cruise").
  constexpr std::string_view kVowels = "aeiouy";
  if (token.size() >= 3 && token.back() == 'e' && kVowels.find(token[token.size() - 2]) == std::string_view::npos &&
      token.substr(0, token.size() - 2).find_first_of(kVowels) != std::string_view::npos)
    token.remove_suffix(1);
  std::vector<PhonemeId> out;
  size_t pos = 0;
  while (pos < token.size()) {
    const G2pRule* hit = nullptr;
    for (const auto& rule : rules_) {
      if (token.substr(pos).starts_with(rule.grapheme)) {
        hit = &rule;
        break;
      }
    }
    if (hit == nullptr) {
      ++pos;
      continue;
    }
    out.insert(out.end(), hit->phonemes.begin(), hit->phonemes.end());
    pos += hit->grapheme.size();
  }
  return out;
}

PhonemeSequence PhoneticTables::G2p(const LetterWord& word) const { return G2pImpl(word.text); }

PhonemeSequence PhoneticTables::G2pImpl(std::string_view text) const {
  PhonemeSequence seq;
  for (const auto& token : SplitWhitespace(text)) {
    if (!seq.phonemes.empty()) seq.phonemes.push_back(kWordBoundary);
    if (auto it = lexicon_.find(token); it != lexicon_.end()) {
      seq.phonemes.insert(seq.phonemes.end(), it->second.begin(), it->second.end());
    } else {
      auto fallback = G2pFallback(token);
      seq.phonemes.insert(seq.phonemes.end(), fallback.begin(), fallback.end());
    }
  }
  return seq;
}

std::string PhoneticTables::RenderPhonemes(const PhonemeSequence& sequence) const {
  std::string out;
  for (size_t i = 0; i < sequence.phonemes.size(); ++i) {
    if (i > 0) out += ' ';
    out += sequence.phonemes[i] == kWordBoundary ? "_" : phoneme(sequence.phonemes[i]).symbol;
  }
  return out;
}

const std::string& PhoneticTables::UnitSymbol(const Unit& unit) const {
  switch (unit.kind) {
    case UnitKind::kInitial:
      return InitialSymbol(unit.index);
    case UnitKind::kFinal:
      return FinalSymbol(unit.index);
    case UnitKind::kPhoneme:
      break;
  }
  return phoneme(unit.index).symbol;
}

double PhoneticTables::UnitDistance(const Unit& a, const Unit& b) const {
  if (a.kind != b.kind) return 1.0;
  switch (a.kind) {
    case UnitKind::kInitial:
      return NormalizedHamming(initial_features_.at(a.index), initial_features_.at(b.index));
    case UnitKind::kFinal:
      return NormalizedHamming(final_features_.at(a.index), final_features_.at(b.index));
    case UnitKind::kPhoneme:
      break;
  }
  return PhonemeDistance(a.index, b.index);
}

const Vec2& PhoneticTables::Embedding(const Unit& unit) const {
  switch (unit.kind) {
    case UnitKind::kInitial:
      return initial_embedding_.at(static_cast<size_t>(unit.index));
    case UnitKind::kFinal:
      return final_embedding_.at(static_cast<size_t>(unit.index));
    case UnitKind::kPhoneme:
      break;
  }
  return phoneme_embedding_.at(static_cast<size_t>(unit.index));
}

std::vector<Unit> PhoneticTables::Units(const ChineseWord& word) const {
  std::vector<Unit> units;
  units.reserve(word.syllables.size() * 2);
  for (const auto& s : word.syllables) {
    units.push_back({UnitKind::kInitial, s.initial});
    units.push_back({UnitKind::kFinal, s.final});
  }
  return units;
}

std::vector<Unit> PhoneticTables::Units(const PhonemeSequence& sequence) const {
  std::vector<Unit> units;
  for (PhonemeId p : sequence.phonemes)
    if (p != kWordBoundary) units.push_back({UnitKind::kPhoneme, p});
  return units;
}

std::vector<double> PhoneticTables::EncodeFeatures(std::span<const Unit> units, size_t slots) const {
  if (units.size() > slots)
    throw Error(ErrorCode::kTooManyUnits,
                std::to_string(units.size()) + " units exceed " + std::to_string(slots) + " slots");
  std::vector<double> out(2 * slots, 0.0);
  for (size_t i = 0; i < units.size(); ++i) {
    const Vec2& e = Embedding(units[i]);
    out[2 * i] = e.x;
    out[2 * i + 1] = e.y;
  }
  return out;
}

double PhoneticTables::CharacterDistance(const Syllable& a, const Syllable& b, double tone_penalty) const {
  return Norm(Embedding({UnitKind::kInitial, a.initial}), Embedding({UnitKind::kInitial, b.initial})) +
         Norm(Embedding({UnitKind::kFinal, a.final}), Embedding({UnitKind::kFinal, b.final})) +
         (a.tone != b.tone ? tone_penalty : 0.0);
}

}  // namespace fakewake
