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

#include "fakewake/evolve.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "fakewake/error.h"

namespace fakewake {
namespace {

// Stream indices partition the run's randomness so each phase draws from its
// own reproducible sequence.
constexpr uint64_t kSeedStream = 0;
constexpr uint64_t kVariationStreamBase = 1000;

std::vector<size_t> BruteForceFront(std::span<const Objectives> pop) {
  std::vector<size_t> out;
  for (size_t i = 0; i < pop.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < pop.size() && !dominated; ++j) dominated = j != i && Dominates(pop[j], pop[i]);
    if (!dominated) out.push_back(i);
  }
  return out;
}

}  // namespace

bool Dominates(const Objectives& a, const Objectives& b) {
  return a.wake_rate >= b.wake_rate && a.dissimilarity >= b.dissimilarity &&
         (a.wake_rate > b.wake_rate || a.dissimilarity > b.dissimilarity);
}

std::vector<size_t> NonDominatedFront(std::span<const Objectives> population) {
  // Sort by wake rate descending, then dissimilarity descending. A member is
  // dominated iff some member before it in this order (excluding exact
  // duplicates) has dissimilarity at least as large, so one sweep suffices.
  std::vector<size_t> order(population.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto& x = population[a];
    const auto& y = population[b];
    if (x.wake_rate != y.wake_rate) return x.wake_rate > y.wake_rate;
    if (x.dissimilarity != y.dissimilarity) return x.dissimilarity > y.dissimilarity;
    return a < b;
  });

  std::vector<size_t> front;
  double best_dissimilarity = -std::numeric_limits<double>::infinity();
  size_t i = 0;
  while (i < order.size()) {
    // Group identical objective vectors; they stand or fall together.
    size_t j = i;
    const Objectives& head = population[order[i]];
    while (j < order.size() && population[order[j]] == head) ++j;
    // Every earlier member differs from head and has a higher wake rate or an
    // equal wake rate with higher dissimilarity.
    const bool dominated = head.dissimilarity <= best_dissimilarity;
    if (!dominated)
      for (size_t k = i; k < j; ++k) front.push_back(order[k]);
    best_dissimilarity = std::max(best_dissimilarity, head.dissimilarity);
    i = j;
  }
  std::sort(front.begin(), front.end());
  return front;
}

std::string_view BucketName(Bucket bucket) {
  switch (bucket) {
    case Bucket::kLow:
      return "low";
    case Bucket::kMedium:
      return "medium";
    case Bucket::kHigh:
      return "high";
  }
  return "?";
}

Bucket BucketOf(double rate) {
  constexpr double kEps = 1e-9;
  if (rate < 0.1 - kEps) throw Error(ErrorCode::kBelowFuzzyThreshold, "wake rate below 0.1");
  if (rate < 0.35) return Bucket::kLow;
  if (rate < 0.75) return Bucket::kMedium;
  return Bucket::kHigh;
}

void EvolveConfig::Validate() const {
  if (population_size < 4) throw Error(ErrorCode::kConfigError, "population_size must be at least 4");
  if (generations < 1) throw Error(ErrorCode::kConfigError, "generations must be at least 1");
  if (trials < 1) throw Error(ErrorCode::kConfigError, "trials must be at least 1");
  if (!(fuzzy_threshold > 0.0 && fuzzy_threshold <= 1.0))
    throw Error(ErrorCode::kConfigError, "fuzzy_threshold must lie in (0, 1]");
  variation.Validate();
}

bool FuzzyArchive::Contains(std::string_view word) const {
  return std::any_of(candidates.begin(), candidates.end(), [&](const auto& c) { return c.word == word; });
}

size_t FuzzyArchive::CountAtLeast(double wake_rate) const {
  return static_cast<size_t>(std::count_if(candidates.begin(), candidates.end(), [&](const auto& c) {
    return c.objectives.wake_rate >= wake_rate - 1e-12;
  }));
}

FuzzyArchive RunEvolution(const WordDomain& domain, WakeOracle& oracle, const EvolveConfig& config, uint64_t seed,
                          FuzzyArchive* partial, const GenerationCallback& on_generation) {
  config.Validate();
  const GenomeSpace& space = domain.space();

  FuzzyArchive archive;
  archive.seed = seed;
  archive.wake_word = domain.wake_text();
  archive.language = domain.language();
  archive.oracle = oracle.Describe();

  std::unordered_map<std::string, Objectives> memo;
  std::unordered_map<std::string, bool> archived;

  RngStream seed_rng(seed, kSeedStream);
  std::vector<Genome> population = SeedGenomes(space, domain.wake_genome(), config.population_size, seed_rng);

  auto evaluate = [&](const Genome& genome, size_t generation) -> Objectives {
    const auto text = domain.Decode(genome);
    if (!text) return {};
    if (auto it = memo.find(*text); it != memo.end()) return it->second;
    const WakeRateReport report = EstimateWakeRate(oracle, *text, config.trials);
    archive.query_count += static_cast<uint64_t>(config.trials);
    const Objectives obj{report.rate, domain.Dissimilarity(*text)};
    memo.emplace(*text, obj);
    if (obj.wake_rate >= config.fuzzy_threshold - 1e-12 && obj.dissimilarity > 0.0) {
      if (archived.emplace(*text, true).second) archive.candidates.push_back({*text, genome, obj, generation});
    } else if (obj.wake_rate == 0.0) {
      archive.rejected.push_back({*text, genome, obj, generation});
    }
    return obj;
  };

  try {
    for (size_t gen = 0; gen < config.generations; ++gen) {
      std::vector<Objectives> objectives;
      objectives.reserve(population.size());
      for (const auto& genome : population) objectives.push_back(evaluate(genome, gen));

      std::vector<size_t> parents = NonDominatedFront(objectives);
      if (config.check_front && parents != BruteForceFront(objectives))
        throw Error(ErrorCode::kDegenerateData, "non-dominated front disagrees with brute force");
      if (parents.size() < 2) {
        std::vector<size_t> order(population.size());
        std::iota(order.begin(), order.end(), size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
          if (objectives[a].wake_rate != objectives[b].wake_rate)
            return objectives[a].wake_rate > objectives[b].wake_rate;
          return objectives[a].dissimilarity > objectives[b].dissimilarity;
        });
        parents.assign(order.begin(), order.begin() + 2);
      }

      archive.generations_completed = gen + 1;
      if (on_generation) on_generation(gen, archive);
      if (gen + 1 == config.generations) break;

      std::vector<Genome> next;
      next.reserve(config.population_size);
      if (config.elitism) {
        for (size_t idx : parents) {
          if (next.size() >= config.population_size / 2) break;
          if (std::find(next.begin(), next.end(), population[idx]) == next.end()) next.push_back(population[idx]);
        }
      }
      RngStream rng(seed, kVariationStreamBase + gen);
      while (next.size() < config.population_size) {
        const Genome& a = population[parents[rng.UniformIndex(parents.size())]];
        const Genome& b = population[parents[rng.UniformIndex(parents.size())]];
        auto [c1, c2] = Crossover(space, a, b, config.variation, rng);
        next.push_back(Mutate(space, c1, config.variation, rng));
        if (next.size() < config.population_size) next.push_back(Mutate(space, c2, config.variation, rng));
      }
      population = std::move(next);
    }
  } catch (const Error&) {
    if (partial != nullptr) *partial = archive;
    throw;
  }
  return archive;
}

}  // namespace fakewake
