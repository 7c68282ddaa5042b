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

// Black-box wake detectors: the query interface, wake-rate estimation, a
// seeded simulated detector and an adapter for external processes.

#ifndef FAKEWAKE_ORACLE_H_
#define FAKEWAKE_ORACLE_H_

#include <sys/types.h>

#include <atomic>
#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fakewake/domain.h"

namespace fakewake {

class WakeOracle {
 public:
  virtual ~WakeOracle() = default;

  // One trial: did the detector activate for `word`?
  virtual bool Query(std::string_view word) = 0;

  virtual std::string Describe() const = 0;
};

// Always answers the same. Useful for tests and dry runs.
class ConstantOracle final : public WakeOracle {
 public:
  explicit ConstantOracle(bool answer) : answer_(answer) {}
  bool Query(std::string_view) override { return answer_; }
  std::string Describe() const override { return answer_ ? "always-true" : "always-false"; }

 private:
  bool answer_;
};

struct WakeRateReport {
  std::string word;
  int trials = 0;
  int positives = 0;
  double rate = 0.0;
};

// k independent queries. Throws kConfigError when k < 1; oracle errors
// propagate unchanged.
WakeRateReport EstimateWakeRate(WakeOracle& oracle, std::string_view word, int trials = 10);

struct SimulatorConfig {
  double threshold = 0.7;    // Score at which the wake probability is 1/2.
  double temperature = 0.05;
  double decisive_weight = 0.6;
  int decisive_unit = -1;    // Index into the target's units; -1 = middle unit.
  // Unit distances are divided by this and capped at 1, so units farther than
  // the radius count as complete mismatches.
  double similarity_radius = 0.3;
  uint64_t seed = 0;

  void Validate() const;
};

double Logistic(double x);

// A stand-in for a commercial detector.
//
// The score of a word is sum_u weight_u * (1 - d_u), where d_u compares the
// word's u-th unit with the target's u-th unit (missing units give d_u = 1).
// One query wakes with probability logistic((score - threshold) / temperature).
// The uniform draw for query i is a pure function of (seed, i), and i comes
// from an atomic counter, so concurrent callers are safe and a fixed query
// sequence always gets the same answers.
class SimulatedDetector final : public WakeOracle {
 public:
  SimulatedDetector(std::shared_ptr<const WordDomain> domain, std::vector<double> unit_weights,
                    const SimulatorConfig& config);

  // Weight `decisive_weight` on one unit, the rest spread evenly.
  static std::vector<double> DecisiveWeights(size_t units, size_t decisive_unit, double decisive_weight);
  static std::unique_ptr<SimulatedDetector> WithDecisiveUnit(std::shared_ptr<const WordDomain> domain,
                                                             const SimulatorConfig& config);

  bool Query(std::string_view word) override;
  std::string Describe() const override;

  double UnitDissimilarity(const Unit& word_unit, const Unit& target_unit) const;
  double Score(std::string_view word) const;
  double WakeProbability(std::string_view word) const;

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Unit>& target_units() const { return domain_->wake_units(); }
  size_t decisive_unit() const { return decisive_unit_; }
  uint64_t queries() const { return counter_.load(); }

 private:
  std::shared_ptr<const WordDomain> domain_;
  std::vector<double> weights_;
  SimulatorConfig config_;
  size_t decisive_unit_ = 0;
  std::atomic<uint64_t> counter_{0};
};

// Talks to a child process over a line protocol: the candidate text and a
// newline go to its stdin, and it must answer "1" or "0" on one stdout line.
// Anything else is a kProtocolError; no answer within the timeout is kTimeout.
// Calls on one instance are serialized by the caller.
class ExternalOracle final : public WakeOracle {
 public:
  explicit ExternalOracle(const std::string& command,
                          std::chrono::milliseconds timeout = std::chrono::seconds(30));
  ~ExternalOracle() override;

  ExternalOracle(const ExternalOracle&) = delete;
  ExternalOracle& operator=(const ExternalOracle&) = delete;

  bool Query(std::string_view word) override;
  std::string Describe() const override { return "exec:" + command_; }

 private:
  std::string ReadLine();

  std::string command_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// Builds the oracle named by an --oracle value: "sim" or "exec:<command>".
std::unique_ptr<WakeOracle> MakeOracle(std::string_view spec, std::shared_ptr<const WordDomain> domain,
                                       const SimulatorConfig& simulator,
                                       std::chrono::milliseconds timeout = std::chrono::seconds(30));

}  // namespace fakewake

#endif  // FAKEWAKE_ORACLE_H_
