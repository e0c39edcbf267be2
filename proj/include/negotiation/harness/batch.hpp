// Copyright 2026 The negotiation_sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "negotiation/harness/metrics.hpp"
#include "negotiation/harness/trial.hpp"

namespace negotiation::harness {

/// Draws role pairs for a batch. Soft-vs-soft pairs are drawn with
/// probability soft_soft_prob; the remaining mass is spread uniformly over
/// the other seven pairs of {follower, hard, soft} (follower-vs-follower
/// excluded). When both agents have goals they differ.
struct AssignmentGenerator {
  std::size_t n_trials{240};
  std::uint64_t seed{0};
  double soft_soft_prob{0.25};
  /// Pins every trial to one role pair; goals are still drawn per trial.
  std::optional<std::pair<RobotMode, Commitment>> fixed_pair;
};

std::vector<TrialConfig> generate_configs(const AssignmentGenerator& gen, const Profile& profile);

/// "hard-soft" for robot Hard vs human Soft.
std::string role_pair_name(RobotMode robot, Commitment human);
std::string role_pair_name(const TrialConfig& c);

struct BatchRow {
  std::size_t index{0};
  TrialConfig config;
  std::optional<TrialMetrics> metrics;
  std::string digest;  // hex log digest, empty on failure
  std::string failure;  // error message, empty on success
};

struct GroupSummary {
  std::size_t n{0};
  std::size_t failed{0};
  std::size_t successes{0};
  std::size_t robot_wins{0};
  std::size_t human_wins{0};
  std::size_t aborts{0};
  std::size_t timeouts{0};
  std::size_t switches{0};
  std::size_t agreement_segments{0};
  std::size_t disagreement_segments{0};
  double agreement_time{0.0};
  double disagreement_time{0.0};

  void add(const BatchRow& row);
  /// Over trials that completed.
  std::size_t completed() const { return n - failed; }
  double rate(std::size_t count) const;
  double mean_switches() const;
  /// Pooled over every run in the group.
  double mean_agreement() const;
  double mean_disagreement() const;
};

struct BatchResult {
  std::vector<BatchRow> rows;  // config order
  GroupSummary overall;
  std::map<std::string, GroupSummary> by_pair;
};

struct BatchOptions {
  unsigned jobs{1};
  /// Null uses the profile's default model for every trial.
  std::shared_ptr<const intent::LdaModel> model;
  bool digests{true};
};

/// Runs every config on a pool of `jobs` threads. A trial that throws is
/// recorded in its row's failure column; the batch continues.
BatchResult run_batch(const std::vector<TrialConfig>& configs, const BatchOptions& options = {});

void write_batch_csv(std::ostream& out, const BatchResult& result);
nlohmann::json batch_summary_json(const BatchResult& result);

}  // namespace negotiation::harness
