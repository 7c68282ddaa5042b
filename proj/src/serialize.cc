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

#include "fakewake/serialize.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fakewake/error.h"
#include "json.hpp"

namespace fakewake {
namespace {

using nlohmann::json;

json CandidateToJson(const FuzzyCandidate& c) {
  return {{"word", c.word},
          {"genome", c.genome.genes},
          {"wake_rate", c.objectives.wake_rate},
          {"dissimilarity", c.objectives.dissimilarity},
          {"generation", c.generation}};
}

FuzzyCandidate CandidateFromJson(const json& j) {
  FuzzyCandidate c;
  c.word = j.at("word").get<std::string>();
  c.genome.genes = j.at("genome").get<std::vector<int>>();
  c.objectives.wake_rate = j.at("wake_rate").get<double>();
  c.objectives.dissimilarity = j.at("dissimilarity").get<double>();
  c.generation = j.at("generation").get<size_t>();
  return c;
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

template <typename Fn>
auto Parse(std::string_view text, std::string_view what, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kDataError, "malformed " + std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string ArchiveToJson(const FuzzyArchive& archive) {
  json j;
  j["wake_word"] = archive.wake_word;
  j["language"] = archive.language == Language::kChinese ? "zh" : "en";
  j["seed"] = archive.seed;
  j["oracle"] = archive.oracle;
  j["query_count"] = archive.query_count;
  j["generations_completed"] = archive.generations_completed;
  j["candidates"] = json::array();
  for (const auto& c : archive.candidates) j["candidates"].push_back(CandidateToJson(c));
  j["rejected"] = json::array();
  for (const auto& c : archive.rejected) j["rejected"].push_back(CandidateToJson(c));
  return Dump(j);
}

FuzzyArchive ArchiveFromJson(std::string_view text) {
  return Parse(text, "archive", [](const json& j) {
    FuzzyArchive a;
    a.wake_word = j.at("wake_word").get<std::string>();
    const auto lang = j.at("language").get<std::string>();
    if (lang != "zh" && lang != "en") throw Error(ErrorCode::kDataError, "unknown archive language " + lang);
    a.language = lang == "zh" ? Language::kChinese : Language::kEnglish;
    a.seed = j.at("seed").get<uint64_t>();
    a.oracle = j.at("oracle").get<std::string>();
    a.query_count = j.at("query_count").get<uint64_t>();
    a.generations_completed = j.at("generations_completed").get<size_t>();
    for (const auto& c : j.at("candidates")) a.candidates.push_back(CandidateFromJson(c));
    if (j.contains("rejected"))
      for (const auto& c : j.at("rejected")) a.rejected.push_back(CandidateFromJson(c));
    return a;
  });
}

std::string EnsembleToJson(const TreeEnsemble& model) {
  json j;
  j["base_score"] = model.base_score;
  j["learning_rate"] = model.learning_rate;
  j["num_features"] = model.num_features;
  j["trees"] = json::array();
  for (const auto& tree : model.trees) {
    json nodes = json::array();
    for (const auto& n : tree.nodes) {
      if (n.is_leaf()) {
        nodes.push_back({{"value", n.value}, {"cover", n.cover}});
      } else {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"cover", n.cover}});
      }
    }
    j["trees"].push_back({{"nodes", std::move(nodes)}});
  }
  return Dump(j);
}

TreeEnsemble EnsembleFromJson(std::string_view text) {
  return Parse(text, "model", [](const json& j) {
    TreeEnsemble m;
    m.base_score = j.at("base_score").get<double>();
    m.learning_rate = j.at("learning_rate").get<double>();
    m.num_features = j.at("num_features").get<size_t>();
    for (const auto& t : j.at("trees")) {
      Tree tree;
      for (const auto& n : t.at("nodes")) {
        TreeNode node;
        node.cover = n.at("cover").get<double>();
        if (n.contains("feature")) {
          node.feature = n.at("feature").get<int>();
          node.threshold = n.at("threshold").get<double>();
          node.left = n.at("left").get<int>();
          node.right = n.at("right").get<int>();
        } else {
          node.value = n.at("value").get<double>();
        }
        tree.nodes.push_back(node);
      }
      const int size = static_cast<int>(tree.nodes.size());
      for (const auto& node : tree.nodes) {
        if (node.is_leaf()) continue;
        if (node.left <= 0 || node.left >= size || node.right <= 0 || node.right >= size ||
            static_cast<size_t>(node.feature) >= m.num_features)
          throw Error(ErrorCode::kDataError, "model node out of range");
      }
      if (tree.nodes.empty()) throw Error(ErrorCode::kDataError, "model tree has no nodes");
      m.trees.push_back(std::move(tree));
    }
    return m;
  });
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kConfigError, "cannot write " + path.string());
}

std::string FormatFixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string Fingerprint(std::string_view contents) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : contents) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fakewake
