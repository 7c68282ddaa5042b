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

#include "fakewake/oracle.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <sstream>

#include "fakewake/error.h"
#include "fakewake/rng.h"

namespace fakewake {

WakeRateReport EstimateWakeRate(WakeOracle& oracle, std::string_view word, int trials) {
  if (trials < 1) throw Error(ErrorCode::kConfigError, "wake-rate estimation needs at least one trial");
  WakeRateReport report{std::string(word), trials, 0, 0.0};
  for (int i = 0; i < trials; ++i) report.positives += oracle.Query(word) ? 1 : 0;
  report.rate = static_cast<double>(report.positives) / static_cast<double>(trials);
  return report;
}

double Logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void SimulatorConfig::Validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error(ErrorCode::kConfigError, "threshold must lie in (0, 1)");
  if (!(temperature > 0.0)) throw Error(ErrorCode::kConfigError, "temperature must be positive");
  if (!(decisive_weight >= 0.0 && decisive_weight <= 1.0))
    throw Error(ErrorCode::kConfigError, "decisive_weight must lie in [0, 1]");
  if (!(similarity_radius > 0.0 && similarity_radius <= 1.0))
    throw Error(ErrorCode::kConfigError, "similarity_radius must lie in (0, 1]");
}

SimulatedDetector::SimulatedDetector(std::shared_ptr<const WordDomain> domain, std::vector<double> unit_weights,
                                     const SimulatorConfig& config)
    : domain_(std::move(domain)), weights_(std::move(unit_weights)), config_(config) {
  config_.Validate();
  if (weights_.size() != domain_->wake_units().size())
    throw Error(ErrorCode::kConfigError, "one weight per target unit is required");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw Error(ErrorCode::kConfigError, "unit weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::kConfigError, "unit weights must sum to 1");
  decisive_unit_ = static_cast<size_t>(std::max_element(weights_.begin(), weights_.end()) - weights_.begin());
}

std::vector<double> SimulatedDetector::DecisiveWeights(size_t units, size_t decisive_unit, double decisive_weight) {
  if (units == 0 || decisive_unit >= units)
    throw Error(ErrorCode::kConfigError, "decisive unit index out of range");
  if (units == 1) return {1.0};
  std::vector<double> w(units, (1.0 - decisive_weight) / static_cast<double>(units - 1));
  w[decisive_unit] = decisive_weight;
  return w;
}

std::unique_ptr<SimulatedDetector> SimulatedDetector::WithDecisiveUnit(std::shared_ptr<const WordDomain> domain,
                                                                       const SimulatorConfig& config) {
  const size_t units = domain->wake_units().size();
  const size_t decisive = config.decisive_unit < 0 ? units / 2 : static_cast<size_t>(config.decisive_unit);
  auto weights = DecisiveWeights(units, decisive, config.decisive_weight);
  return std::make_unique<SimulatedDetector>(std::move(domain), std::move(weights), config);
}

double SimulatedDetector::UnitDissimilarity(const Unit& word_unit, const Unit& target_unit) const {
  return std::min(1.0, domain_->tables().UnitDistance(word_unit, target_unit) / config_.similarity_radius);
}

double SimulatedDetector::Score(std::string_view word) const {
  const auto units = domain_->UnitsOf(word);
  const auto& target = domain_->wake_units();
  double score = 0.0;
  for (size_t u = 0; u < target.size() && u < units.size(); ++u)
    score += weights_[u] * (1.0 - UnitDissimilarity(units[u], target[u]));
  return score;
}

double SimulatedDetector::WakeProbability(std::string_view word) const {
  return Logistic((Score(word) - config_.threshold) / config_.temperature);
}

bool SimulatedDetector::Query(std::string_view word) {
  const double p = WakeProbability(word);
  const uint64_t index = counter_.fetch_add(1);
  return UnitInterval(SplitMix64(SplitMix64(config_.seed) ^ index)) < p;
}

std::string SimulatedDetector::Describe() const {
  std::ostringstream out;
  out << "sim(decisive_unit=" << decisive_unit_ << ",weight=" << weights_[decisive_unit_]
      << ",threshold=" << config_.threshold << ",temperature=" << config_.temperature << ")";
  return out.str();
}

ExternalOracle::ExternalOracle(const std::string& command, std::chrono::milliseconds timeout)
    : command_(command), timeout_(timeout) {
  // A child that exits early must surface as kOracleFailure, not SIGPIPE.
  signal(SIGPIPE, SIG_IGN);
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) throw Error(ErrorCode::kOracleFailure, "pipe: " + std::string(std::strerror(errno)));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw Error(ErrorCode::kOracleFailure, "pipe: " + std::string(std::strerror(errno)));
  }
  pid_ = fork();
  if (pid_ < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    throw Error(ErrorCode::kOracleFailure, "fork: " + std::string(std::strerror(errno)));
  }
  if (pid_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  fcntl(to_child_, F_SETFD, FD_CLOEXEC);
  fcntl(from_child_, F_SETFD, FD_CLOEXEC);
}

ExternalOracle::~ExternalOracle() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    if (waitpid(pid_, &status, WNOHANG) == 0) {
      kill(pid_, SIGTERM);
      waitpid(pid_, &status, 0);
    }
  }
}

std::string ExternalOracle::ReadLine() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  while (true) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) throw Error(ErrorCode::kTimeout, "no answer from '" + command_ + "'");
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kOracleFailure, "poll: " + std::string(std::strerror(errno)));
    }
    if (ready == 0) continue;
    char chunk[256];
    const ssize_t n = read(from_child_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kOracleFailure, "read: " + std::string(std::strerror(errno)));
    }
    if (n == 0) throw Error(ErrorCode::kOracleFailure, "'" + command_ + "' closed its output");
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

bool ExternalOracle::Query(std::string_view word) {
  std::string request(word);
  request += '\n';
  size_t written = 0;
  while (written < request.size()) {
    const ssize_t n = write(to_child_, request.data() + written, request.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kOracleFailure, "write: " + std::string(std::strerror(errno)));
    }
    written += static_cast<size_t>(n);
  }
  const std::string line = ReadLine();
  if (line == "1") return true;
  if (line == "0") return false;
  throw Error(ErrorCode::kProtocolError, "expected '1' or '0', got '" + line + "'");
}

std::unique_ptr<WakeOracle> MakeOracle(std::string_view spec, std::shared_ptr<const WordDomain> domain,
                                       const SimulatorConfig& simulator, std::chrono::milliseconds timeout) {
  if (spec == "sim") return SimulatedDetector::WithDecisiveUnit(std::move(domain), simulator);
  if (spec.starts_with("exec:") && spec.size() > 5)
    return std::make_unique<ExternalOracle>(std::string(spec.substr(5)), timeout);
  throw Error(ErrorCode::kConfigError, "oracle must be 'sim' or 'exec:<command>', got '" + std::string(spec) + "'");
}

}  // namespace fakewake
