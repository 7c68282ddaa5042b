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

// fakewake: generate, explain and mitigate fuzzy wake-up words.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fakewake/distance.h"
#include "fakewake/error.h"
#include "fakewake/pipeline.h"
#include "fakewake/serialize.h"

namespace {

using fakewake::Error;
using fakewake::ErrorCode;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitOracle = 3;

struct Overrides {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string out;
  std::string oracle;
  std::string language;
  std::string wake_word;
  std::optional<unsigned> threads;
  std::optional<size_t> population;
  std::optional<size_t> generations;
  std::optional<int> trials;
};

void AddRunOptions(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Global seed");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--oracle", o.oracle, "sim | exec:<command>");
  cmd->add_option("--lang", o.language, "zh | en");
  cmd->add_option("--wake-word", o.wake_word, "Wake-up word");
  cmd->add_option("--threads", o.threads, "Worker cap for parallel evaluation")->check(CLI::PositiveNumber);
}

fakewake::RunConfig Resolve(const Overrides& o) {
  fakewake::RunConfig c;
  if (!o.config_path.empty()) c = fakewake::LoadRunConfig(o.config_path);
  if (o.seed) c.seed = o.seed;
  if (!o.out.empty()) c.output_dir = o.out;
  if (!o.oracle.empty()) c.oracle = o.oracle;
  if (!o.language.empty()) c.language = fakewake::ParseLanguage(o.language);
  if (!o.wake_word.empty()) c.wake_word = o.wake_word;
  if (o.threads) c.threads = *o.threads;
  if (o.population) c.evolve.population_size = *o.population;
  if (o.generations) c.evolve.generations = *o.generations;
  if (o.trials) c.evolve.trials = *o.trials;
  return c;
}

int ExitCodeFor(const Error& e) {
  if (e.is_oracle_failure()) return kExitOracle;
  switch (e.code()) {
    case ErrorCode::kConfigError:
    case ErrorCode::kUnknownSyllable:
    case ErrorCode::kInvalidCombination:
    case ErrorCode::kUnknownPhoneme:
    case ErrorCode::kParseFailure:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kBothEmpty:
    case ErrorCode::kAllSpaces:
    case ErrorCode::kTooManyUnits:
      return kExitConfig;
    default:
      return kExitFailure;
  }
}

int Dist(const std::string& language, const std::string& a, const std::string& b) {
  const auto tables = fakewake::PhoneticTables::Default();
  double d = 0.0;
  if (fakewake::ParseLanguage(language) == fakewake::Language::kChinese) {
    d = fakewake::ChineseDist(*tables, tables->ParsePinyin(a), tables->ParsePinyin(b));
  } else {
    const auto pa = tables->G2p({a});
    const auto pb = tables->G2p({b});
    std::cout << a << "\t" << tables->RenderPhonemes(pa) << "\n" << b << "\t" << tables->RenderPhonemes(pb) << "\n";
    d = fakewake::EnglishDist(*tables, pa, pb);
  }
  std::cout << "distance\t" << fakewake::FormatFixed(d) << "\n";
  return 0;
}

int Validate(const std::string& language, const std::string& text) {
  const auto tables = fakewake::PhoneticTables::Default();
  if (fakewake::ParseLanguage(language) == fakewake::Language::kChinese) {
    const auto word = tables->ParsePinyin(text);
    for (const auto& s : word.syllables)
      std::cout << tables->RenderSyllable(s) << "\tinitial=" << tables->InitialSymbol(s.initial)
                << "\tfinal=" << tables->FinalSymbol(s.final) << "\ttone=" << s.tone << "\n";
    std::cout << "valid\t" << tables->RenderWord(word) << "\n";
    return 0;
  }
  for (char ch : text)
    if (!(ch >= 'a' && ch <= 'z') && ch != ' ')
      throw Error(ErrorCode::kParseFailure, std::string("'") + ch + "' is outside a-z and space");
  std::cout << "valid\t" << tables->RenderPhonemes(tables->G2p({text})) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate, explain and mitigate fuzzy wake-up words"};
  app.require_subcommand(1);
  std::string data_dir;
  app.add_option("--data-dir", data_dir, "Phonetic data directory (overrides FAKEWAKE_DATA_DIR)");

  Overrides gen_opts, explain_opts, mitigate_opts;
  auto* gen = app.add_subcommand("generate", "Search for fuzzy words");
  AddRunOptions(gen, gen_opts);
  gen->add_option("--population", gen_opts.population, "Population size");
  gen->add_option("--generations", gen_opts.generations, "Number of generations");
  gen->add_option("--trials", gen_opts.trials, "Oracle trials per word");

  std::string explain_archive, mitigate_archive;
  auto* explain = app.add_subcommand("explain", "Train the proxy classifier and extract decisive factors");
  AddRunOptions(explain, explain_opts);
  explain->add_option("--archive", explain_archive, "Archive JSON (default: <out>/archive.json)");

  auto* mitigate = app.add_subcommand("mitigate", "Strengthen a reference detector and report metrics");
  AddRunOptions(mitigate, mitigate_opts);
  mitigate->add_option("--archive", mitigate_archive, "Archive JSON (default: <out>/archive.json)");

  std::string dist_lang = "en", dist_a, dist_b;
  auto* dist = app.add_subcommand("dist", "Distance between two words");
  dist->add_option("--lang", dist_lang, "zh | en");
  dist->add_option("first", dist_a)->required();
  dist->add_option("second", dist_b)->required();

  std::string validate_lang = "en", validate_text;
  auto* validate = app.add_subcommand("validate", "Check a pinyin or letter word");
  validate->add_option("--lang", validate_lang, "zh | en");
  validate->add_option("word", validate_text)->required();

  auto* defaults = app.add_subcommand("defaults", "Print the default run configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (!data_dir.empty()) setenv("FAKEWAKE_DATA_DIR", data_dir.c_str(), 1);

  try {
    if (*gen) {
      const auto config = Resolve(gen_opts);
      const auto archive = fakewake::CmdGenerate(config);
      std::cout << "fuzzy words: " << archive.candidates.size() << " (" << archive.CountAtLeast(0.8)
                << " with wake rate >= 0.8), non-fuzzy: " << archive.rejected.size()
                << ", queries: " << archive.query_count << "\n"
                << "wrote " << (config.output_dir / "archive.json").string() << "\n";
    } else if (*explain) {
      const auto config = Resolve(explain_opts);
      const auto path = explain_archive.empty() ? config.output_dir / "archive.json" : std::filesystem::path(explain_archive);
      const auto report = fakewake::CmdExplain(config, path);
      std::cout << "cv accuracy: " << fakewake::FormatFixed(report.cv.accuracy, 4) << "\ntop decisive units:";
      for (size_t i = 0; i < std::min<size_t>(5, report.ranking.size()); ++i) std::cout << " " << report.ranking[i].unit;
      std::cout << "\n";
    } else if (*mitigate) {
      const auto config = Resolve(mitigate_opts);
      const auto path = mitigate_archive.empty() ? config.output_dir / "archive.json" : std::filesystem::path(mitigate_archive);
      fakewake::CmdMitigate(config, path);
      std::cout << fakewake::ReadFile(config.output_dir / "mitigation.txt");
    } else if (*dist) {
      return Dist(dist_lang, dist_a, dist_b);
    } else if (*validate) {
      return Validate(validate_lang, validate_text);
    } else if (*defaults) {
      std::cout << fakewake::RunConfigToJson(fakewake::RunConfig{});
    }
  } catch (const Error& e) {
    std::cerr << "fakewake: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "fakewake: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
