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

// Run configuration and the generate / explain / mitigate commands.

#ifndef FAKEWAKE_PIPELINE_H_
#define FAKEWAKE_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "fakewake/domain.h"
#include "fakewake/evolve.h"
#include "fakewake/explain.h"
#include "fakewake/mitigate.h"
#include "fakewake/oracle.h"

namespace fakewake {

struct RunConfig {
  Language language = Language::kEnglish;
  std::string wake_word = "alexa";
  std::string oracle = "sim";
  std::optional<uint64_t> seed;
  std::filesystem::path output_dir = "fakewake-out";
  double english_length_ratio = 1.5;
  size_t slots = 0;  // 0 = the language default.
  int oracle_timeout_ms = 30000;
  unsigned threads = 1;

  EvolveConfig evolve;
  DistanceConfig distance;
  SimulatorConfig simulator;
  std::optional<uint64_t> simulator_seed;  // Unset = the run seed.
  ExplainConfig explain;
  MitigateConfig mitigate;

  // Throws kConfigError; also checks that the wake word parses.
  void Validate() const;
  uint64_t RequireSeed() const;  // Throws kConfigError when unset.
};

// Every field, with defaults filled in. Keys are snake_case and grouped into
// blocks: evolve, variation, distance, simulator, explain, mitigate.
std::string RunConfigToJson(const RunConfig& config);

// Applies the keys present in `text` on top of `base`. Unknown keys and
// wrongly typed values raise kConfigError.
RunConfig RunConfigFromJson(std::string_view text, RunConfig base = {});
RunConfig LoadRunConfig(const std::filesystem::path& path, RunConfig base = {});

std::shared_ptr<const WordDomain> MakeDomain(const RunConfig& config);

// Writes archive.json, summary.tsv and manifest.json into output_dir.
FuzzyArchive CmdGenerate(const RunConfig& config);

// Reads the archive and writes model.json, explain.json, factors.tsv and
// grouping.tsv. Throws kConfigError when the archive is missing and
// kEmptyClass when it lacks fuzzy or non-fuzzy words.
ExplainReport CmdExplain(const RunConfig& config, const std::filesystem::path& archive_path);

// Reads the archive and writes conventional/{train,test}.tsv, fuzzy.tsv,
// collective.txt, detectors/{original,strengthened}.json, mitigation.json and
// mitigation.txt. Screening uses the ranking in explain.json when the output
// directory has one and recomputes it otherwise.
MitigationResult CmdMitigate(const RunConfig& config, const std::filesystem::path& archive_path);

}  // namespace fakewake

#endif  // FAKEWAKE_PIPELINE_H_
