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

#include "fakewake/pipeline.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "fakewake/error.h"
#include "fakewake/serialize.h"
#include "json.hpp"

namespace fakewake {
namespace {

using nlohmann::json;
using Setter = std::function<void(const json&)>;

template <typename T>
Setter Set(T& field) {
  return [&field](const json& v) { field = v.get<T>(); };
}

void ApplyBlock(const json& block, std::string_view name, const std::map<std::string, Setter>& setters) {
  if (!block.is_object()) throw Error(ErrorCode::kConfigError, std::string(name) + " must be an object");
  for (const auto& [key, value] : block.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) throw Error(ErrorCode::kConfigError, "unknown key " + std::string(name) + "." + key);
    try {
      it->second(value);
    } catch (const json::exception&) {
      throw Error(ErrorCode::kConfigError, "bad value for " + std::string(name) + "." + key + ": " + value.dump());
    }
  }
}

json GbdtJson(const GbdtParams& p) {
  return {{"n_trees", p.n_trees}, {"max_depth", p.max_depth}, {"learning_rate", p.learning_rate},
          {"min_leaf", p.min_leaf}};
}

std::map<std::string, Setter> GbdtSetters(GbdtParams& p) {
  return {{"n_trees", Set(p.n_trees)}, {"max_depth", Set(p.max_depth)},
          {"learning_rate", Set(p.learning_rate)}, {"min_leaf", Set(p.min_leaf)}};
}

json ConfigJson(const RunConfig& c) {
  json j;
  j["language"] = LanguageName(c.language);
  j["wake_word"] = c.wake_word;
  j["oracle"] = c.oracle;
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["output_dir"] = c.output_dir.string();
  j["english_length_ratio"] = c.english_length_ratio;
  j["slots"] = c.slots;
  j["oracle_timeout_ms"] = c.oracle_timeout_ms;
  j["threads"] = c.threads;
  j["evolve"] = {{"population_size", c.evolve.population_size},
                 {"generations", c.evolve.generations},
                 {"fuzzy_threshold", c.evolve.fuzzy_threshold},
                 {"trials", c.evolve.trials},
                 {"elitism", c.evolve.elitism}};
  j["variation"] = {{"mutation_rate", c.evolve.variation.mutation_rate},
                    {"crossover_rate", c.evolve.variation.crossover_rate}};
  j["distance"] = {{"normalization", c.distance.normalization},
                   {"space_cost", c.distance.space_cost},
                   {"tone_penalty", c.distance.tone_penalty}};
  j["simulator"] = {{"threshold", c.simulator.threshold},
                    {"temperature", c.simulator.temperature},
                    {"decisive_weight", c.simulator.decisive_weight},
                    {"decisive_unit", c.simulator.decisive_unit},
                    {"similarity_radius", c.simulator.similarity_radius},
                    {"seed", c.simulator_seed ? json(*c.simulator_seed) : json(nullptr)}};
  j["explain"] = {{"gbdt", GbdtJson(c.explain.gbdt)},
                  {"folds", c.explain.folds},
                  {"beta", c.explain.beta},
                  {"max_class_ratio", c.explain.max_class_ratio}};
  j["mitigate"] = {{"n_pos", c.mitigate.n_pos},
                   {"n_neg", c.mitigate.n_neg},
                   {"jitter", c.mitigate.jitter},
                   {"gbdt", GbdtJson(c.mitigate.gbdt)},
                   {"collective_size", c.mitigate.collective_size},
                   {"collective", c.mitigate.collective.string()},
                   {"screening_top_n", c.mitigate.screening_top_n},
                   {"high_wake_rate", c.mitigate.high_wake_rate}};
  return j;
}

Setter OptionalSeed(std::optional<uint64_t>& field) {
  return [&field](const json& v) {
    if (v.is_null()) {
      field.reset();
    } else {
      field = v.get<uint64_t>();
    }
  };
}

json ReportJson(const MitigationReport& r) {
  return {{"false_positive_rate", r.false_positive_rate},
          {"false_negative_rate", r.false_negative_rate},
          {"accuracy", r.accuracy},
          {"fuzzy_rate", r.fuzzy_rate},
          {"true_positives", r.true_positives},
          {"false_positives", r.false_positives},
          {"true_negatives", r.true_negatives},
          {"false_negatives", r.false_negatives}};
}

std::string DatasetTsv(const Dataset& d) {
  std::string out = "word\tlabel\n";
  for (size_t i = 0; i < d.size(); ++i) out += d.words[i] + "\t" + std::to_string(d.labels[i]) + "\n";
  return out;
}

std::string Percent(double v) { return FormatFixed(100.0 * v, 2) + "%"; }

// Uses the archive's wake word and language so a bare config can read any archive.
RunConfig ForArchive(RunConfig config, const FuzzyArchive& archive) {
  config.language = archive.language;
  config.wake_word = archive.wake_word;
  return config;
}

FuzzyArchive LoadArchive(const std::filesystem::path& path) {
  if (path.empty() || !std::filesystem::exists(path))
    throw Error(ErrorCode::kConfigError, "archive not found: '" + path.string() + "'");
  return ArchiveFromJson(ReadFile(path));
}

}  // namespace

void RunConfig::Validate() const {
  evolve.Validate();
  distance.Validate();
  simulator.Validate();
  explain.Validate();
  mitigate.Validate();
  if (threads < 1) throw Error(ErrorCode::kConfigError, "threads must be at least 1");
  if (oracle_timeout_ms < 1) throw Error(ErrorCode::kConfigError, "oracle_timeout_ms must be positive");
  if (!(english_length_ratio >= 1.0)) throw Error(ErrorCode::kConfigError, "english_length_ratio must be at least 1");
  if (oracle != "sim" && !(oracle.starts_with("exec:") && oracle.size() > 5))
    throw Error(ErrorCode::kConfigError, "oracle must be 'sim' or 'exec:<command>'");
  MakeDomain(*this);
}

uint64_t RunConfig::RequireSeed() const {
  if (!seed) throw Error(ErrorCode::kConfigError, "a seed is required (set \"seed\" or pass --seed)");
  return *seed;
}

std::string RunConfigToJson(const RunConfig& config) { return ConfigJson(config).dump(2) + "\n"; }

RunConfig RunConfigFromJson(std::string_view text, RunConfig base) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c = std::move(base);
  std::string language = std::string(LanguageName(c.language));
  std::string output_dir = c.output_dir.string();
  std::string collective = c.mitigate.collective.string();
  std::map<std::string, Setter> top = {
      {"language", Set(language)},
      {"wake_word", Set(c.wake_word)},
      {"oracle", Set(c.oracle)},
      {"seed", OptionalSeed(c.seed)},
      {"output_dir", Set(output_dir)},
      {"english_length_ratio", Set(c.english_length_ratio)},
      {"slots", Set(c.slots)},
      {"oracle_timeout_ms", Set(c.oracle_timeout_ms)},
      {"threads", Set(c.threads)},
      {"evolve",
       [&](const json& b) {
         ApplyBlock(b, "evolve",
                    {{"population_size", Set(c.evolve.population_size)},
                     {"generations", Set(c.evolve.generations)},
                     {"fuzzy_threshold", Set(c.evolve.fuzzy_threshold)},
                     {"trials", Set(c.evolve.trials)},
                     {"elitism", Set(c.evolve.elitism)}});
       }},
      {"variation",
       [&](const json& b) {
         ApplyBlock(b, "variation",
                    {{"mutation_rate", Set(c.evolve.variation.mutation_rate)},
                     {"crossover_rate", Set(c.evolve.variation.crossover_rate)}});
       }},
      {"distance",
       [&](const json& b) {
         ApplyBlock(b, "distance",
                    {{"normalization", Set(c.distance.normalization)},
                     {"space_cost", Set(c.distance.space_cost)},
                     {"tone_penalty", Set(c.distance.tone_penalty)}});
       }},
      {"simulator",
       [&](const json& b) {
         ApplyBlock(b, "simulator",
                    {{"threshold", Set(c.simulator.threshold)},
                     {"temperature", Set(c.simulator.temperature)},
                     {"decisive_weight", Set(c.simulator.decisive_weight)},
                     {"decisive_unit", Set(c.simulator.decisive_unit)},
                     {"similarity_radius", Set(c.simulator.similarity_radius)},
                     {"seed", OptionalSeed(c.simulator_seed)}});
       }},
      {"explain",
       [&](const json& b) {
         ApplyBlock(b, "explain",
                    {{"gbdt", [&](const json& g) { ApplyBlock(g, "explain.gbdt", GbdtSetters(c.explain.gbdt)); }},
                     {"folds", Set(c.explain.folds)},
                     {"beta", Set(c.explain.beta)},
                     {"max_class_ratio", Set(c.explain.max_class_ratio)}});
       }},
      {"mitigate",
       [&](const json& b) {
         ApplyBlock(b, "mitigate",
                    {{"n_pos", Set(c.mitigate.n_pos)},
                     {"n_neg", Set(c.mitigate.n_neg)},
                     {"jitter", Set(c.mitigate.jitter)},
                     {"gbdt", [&](const json& g) { ApplyBlock(g, "mitigate.gbdt", GbdtSetters(c.mitigate.gbdt)); }},
                     {"collective_size", Set(c.mitigate.collective_size)},
                     {"collective", Set(collective)},
                     {"screening_top_n", Set(c.mitigate.screening_top_n)},
                     {"high_wake_rate", Set(c.mitigate.high_wake_rate)}});
       }},
  };
  ApplyBlock(root, "config", top);
  c.language = ParseLanguage(language);
  c.output_dir = output_dir;
  c.mitigate.collective = collective;
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path, RunConfig base) {
  return RunConfigFromJson(ReadFile(path), std::move(base));
}

std::shared_ptr<const WordDomain> MakeDomain(const RunConfig& config) {
  return std::make_shared<WordDomain>(PhoneticTables::Default(), config.language, config.wake_word,
                                      config.english_length_ratio, config.slots, config.distance);
}

FuzzyArchive CmdGenerate(const RunConfig& config) {
  config.Validate();
  const uint64_t seed = config.RequireSeed();
  const auto domain = MakeDomain(config);
  SimulatorConfig simulator = config.simulator;
  simulator.seed = config.simulator_seed.value_or(seed);
  auto oracle = MakeOracle(config.oracle, domain, simulator, std::chrono::milliseconds(config.oracle_timeout_ms));

  FuzzyArchive partial;
  FuzzyArchive archive;
  try {
    archive = RunEvolution(*domain, *oracle, config.evolve, seed, &partial);
  } catch (const Error& e) {
    if (e.is_oracle_failure()) WriteFile(config.output_dir / "archive.partial.json", ArchiveToJson(partial));
    throw;
  }

  std::vector<const FuzzyCandidate*> rows;
  for (const auto& c : archive.candidates) rows.push_back(&c);
  std::stable_sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) {
    if (a->objectives.dissimilarity != b->objectives.dissimilarity)
      return a->objectives.dissimilarity > b->objectives.dissimilarity;
    return a->word < b->word;
  });
  std::string summary = "word\twake_rate\tbucket\tdissimilarity\n";
  for (const auto* c : rows)
    summary += c->word + "\t" + FormatFixed(c->objectives.wake_rate, 4) + "\t" +
               std::string(BucketName(BucketOf(c->objectives.wake_rate))) + "\t" +
               FormatFixed(c->objectives.dissimilarity) + "\n";

  const std::string archive_json = ArchiveToJson(archive);
  WriteFile(config.output_dir / "archive.json", archive_json);
  WriteFile(config.output_dir / "summary.tsv", summary);

  json config_snapshot = ConfigJson(config);
  config_snapshot.erase("output_dir");
  json manifest = {{"command", "generate"},
                   {"seed", seed},
                   {"simulator_seed", simulator.seed},
                   {"oracle", archive.oracle},
                   {"query_count", archive.query_count},
                   {"generations_completed", archive.generations_completed},
                   {"fuzzy_words", archive.candidates.size()},
                   {"non_fuzzy_words", archive.rejected.size()},
                   {"config", config_snapshot},
                   {"outputs", {{"archive.json", Fingerprint(archive_json)}, {"summary.tsv", Fingerprint(summary)}}}};
  WriteFile(config.output_dir / "manifest.json", manifest.dump(2) + "\n");
  return archive;
}

ExplainReport CmdExplain(const RunConfig& base, const std::filesystem::path& archive_path) {
  const FuzzyArchive archive = LoadArchive(archive_path);
  const RunConfig config = ForArchive(base, archive);
  config.Validate();
  const uint64_t seed = config.seed.value_or(archive.seed);
  const auto domain = MakeDomain(config);
  ExplainReport report = Explain(*domain, archive, config.explain, seed);

  json j;
  j["seed"] = seed;
  j["positives"] = report.positives;
  j["negatives"] = report.negatives;
  j["cv_accuracy"] = report.cv.accuracy;
  j["cv_fold_accuracy"] = report.cv.fold_accuracy;
  j["train_accuracy"] = report.train_accuracy;
  j["median_dissimilarity_fuzzy"] = report.median_dissimilarity_fuzzy;
  j["median_dissimilarity_non_fuzzy"] = report.median_dissimilarity_non_fuzzy;
  j["beta"] = config.explain.beta;
  j["grouping"] = {{"mean", report.grouping.mean}, {"delta", report.grouping.delta}};
  j["ranking"] = json::array();
  for (const auto& r : report.ranking)
    j["ranking"].push_back({{"unit", r.unit}, {"contribution", r.contribution}, {"words", r.words}});
  j["words"] = json::array();
  for (const auto& w : report.words) {
    json factors = json::array();
    for (const auto& f : w.factors.factors)
      factors.push_back({{"unit", f.unit}, {"position", f.position}, {"contribution", f.contribution}});
    j["words"].push_back({{"word", w.word},
                          {"confidence", w.confidence},
                          {"base_value", w.shap.base_value},
                          {"margin", w.shap.margin},
                          {"decisive_features", w.factors.features},
                          {"factors", std::move(factors)}});
  }

  std::string factors = "word\tunit\tposition\tcontribution\tdifference\tgroup\n";
  for (const auto& g : report.grouping.factors)
    factors += report.words[g.word].word + "\t" + g.factor.unit + "\t" + std::to_string(g.factor.position) + "\t" +
               FormatFixed(g.factor.contribution) + "\t" +
               (std::isfinite(g.difference) ? FormatFixed(g.difference) : std::string("nan")) + "\t" +
               std::string(SimilarityName(g.group)) + "\n";
  std::string grouping = "position\tgroup\tcount\tmean_contribution\n";
  for (const auto& row : report.grouping.table)
    grouping += std::to_string(row.position) + "\t" + std::string(SimilarityName(row.group)) + "\t" +
                std::to_string(row.count) + "\t" + FormatFixed(row.mean_contribution) + "\n";

  WriteFile(config.output_dir / "model.json", EnsembleToJson(report.model));
  WriteFile(config.output_dir / "explain.json", j.dump(2) + "\n");
  WriteFile(config.output_dir / "factors.tsv", factors);
  WriteFile(config.output_dir / "grouping.tsv", grouping);
  return report;
}

MitigationResult CmdMitigate(const RunConfig& base, const std::filesystem::path& archive_path) {
  const FuzzyArchive archive = LoadArchive(archive_path);
  const RunConfig config = ForArchive(base, archive);
  config.Validate();
  const uint64_t seed = config.RequireSeed();
  const auto domain = MakeDomain(config);
  if (archive.candidates.empty()) throw Error(ErrorCode::kEmptyFuzzySet, "archive has no fuzzy words");

  std::vector<RankedUnit> ranking;
  const auto explain_path = config.output_dir / "explain.json";
  if (std::filesystem::exists(explain_path)) {
    try {
      const json explain = json::parse(ReadFile(explain_path));
      for (const auto& r : explain.at("ranking"))
        ranking.push_back({r.at("unit").get<std::string>(), r.at("contribution").get<double>(),
                           r.at("words").get<size_t>()});
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kDataError, std::string("malformed explain.json: ") + e.what());
    }
  } else {
    ranking = Explain(*domain, archive, config.explain, config.seed.value_or(archive.seed)).ranking;
  }

  MitigationResult r = RunMitigation(*domain, archive, ranking, config.mitigate, seed, config.threads);

  const auto& dir = config.output_dir;
  WriteFile(dir / "conventional" / "train.tsv", DatasetTsv(r.conventional.train));
  WriteFile(dir / "conventional" / "test.tsv", DatasetTsv(r.conventional.test));
  std::string fuzzy = "word\twake_rate\n";
  for (const auto& c : archive.candidates) fuzzy += c.word + "\t" + FormatFixed(c.objectives.wake_rate, 4) + "\n";
  WriteFile(dir / "fuzzy.tsv", fuzzy);
  std::string collective;
  for (const auto& w : r.collective_words) collective += w + "\n";
  WriteFile(dir / "collective.txt", collective);
  WriteFile(dir / "detectors" / "original.json", EnsembleToJson(r.original.ensemble));
  WriteFile(dir / "detectors" / "strengthened.json", EnsembleToJson(r.strengthened.ensemble));

  const size_t top_n = config.mitigate.screening_top_n;
  const double top_coverage = r.coverage.empty() ? 0.0 : r.coverage[std::min(top_n, r.coverage.size()) - 1];
  json top_units = json::array();
  for (size_t i = 0; i < std::min(top_n, ranking.size()); ++i) top_units.push_back(ranking[i].unit);
  json j = {{"seed", seed},
            {"original", ReportJson(r.original_report)},
            {"strengthened", ReportJson(r.strengthened_report)},
            {"high_wake_rate", config.mitigate.high_wake_rate},
            {"high_rate_words", r.high_rate_words},
            {"high_rate_rejection", r.high_rate_rejection},
            {"original_high_rate_rejection", r.original_high_rate_rejection},
            {"screening", {{"top_n", top_n}, {"top_units", top_units}, {"coverage", top_coverage},
                           {"coverage_by_n", r.coverage}}},
            {"datasets", {{"conventional_train", r.conventional.train.size()},
                          {"conventional_test", r.conventional.test.size()},
                          {"fuzzy", r.fuzzy_words.size()},
                          {"collective", r.collective_words.size()}}}};
  WriteFile(dir / "mitigation.json", j.dump(2) + "\n");

  std::ostringstream t;
  t << "metric                 original    strengthened\n";
  auto row = [&](const char* name, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-22s %-11s %s\n", name, Percent(a).c_str(), Percent(b).c_str());
    t << buf;
  };
  row("false positive rate", r.original_report.false_positive_rate, r.strengthened_report.false_positive_rate);
  row("false negative rate", r.original_report.false_negative_rate, r.strengthened_report.false_negative_rate);
  row("accuracy", r.original_report.accuracy, r.strengthened_report.accuracy);
  row("fuzzy rate", r.original_report.fuzzy_rate, r.strengthened_report.fuzzy_rate);
  row("high-rate rejection", r.original_high_rate_rejection, r.high_rate_rejection);
  t << "top-" << top_n << " screening coverage: " << Percent(top_coverage) << "\n";
  WriteFile(dir / "mitigation.txt", t.str());
  return r;
}

}  // namespace fakewake
