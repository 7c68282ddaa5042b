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

// Word-level dissimilarity objectives for the two languages.

#ifndef FAKEWAKE_DISTANCE_H_
#define FAKEWAKE_DISTANCE_H_

#include "fakewake/phonetics.h"

namespace fakewake {

struct DistanceConfig {
  double normalization = 100.0;  // Divides each character distance before tanh.
  double space_cost = 1.0;       // Dissimilarity of a word boundary vs any phoneme.
  double tone_penalty = 1.0;     // Added to a character distance when tones differ.

  // Throws kConfigError unless normalization > 0 and space_cost in (0, 1].
  void Validate() const;
};

// Mean over aligned characters of tanh(character_distance / normalization).
// Result lies in [0, 1). Throws kLengthMismatch.
double ChineseDist(const PhoneticTables& tables, const ChineseWord& a, const ChineseWord& b,
                   const DistanceConfig& config = {});

// Weighted edit distance between phoneme sequences, normalized by m + n.
//
// Deletion and insertion cost 1; substituting p for q costs
// 2 * PhonemeDistance(p, q), a boundary for a phoneme 2 * space_cost, and a
// boundary for a boundary 0. The minimum over all alignments is returned, so
// the result lies in [0, 1]. Throws kBothEmpty.
double EnglishDist(const PhoneticTables& tables, const PhonemeSequence& a, const PhonemeSequence& b,
                   const DistanceConfig& config = {});

// Per-element dissimilarity used by EnglishDist.
double PhonemeOrBoundaryDistance(const PhoneticTables& tables, PhonemeId p, PhonemeId q,
                                 const DistanceConfig& config);

}  // namespace fakewake

#endif  // FAKEWAKE_DISTANCE_H_
