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
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "negotiation/intent/lda.hpp"

namespace negotiation::intent {

/// One 250 Hz sample of the training set.
struct TrainingRecord {
  double t{0.0};
  FeatureVector features{};
  GoalIndex label{0};
  std::uint32_t trial_id{0};
};

/// Parses "g1".."gN" (1-based) into a zero-based goal index.
GoalIndex parse_goal_name(const std::string& s);

nlohmann::json to_json(const TrainingRecord& r);
TrainingRecord training_record_from_json(const nlohmann::json& j);

/// JSONL, one record per line: {"t", "features"[13], "label": "gK", "trial_id"}.
void write_training_jsonl(std::ostream& out, const std::vector<TrainingRecord>& records);
std::vector<TrainingRecord> read_training_jsonl(std::istream& in);
void save_training_set(const std::filesystem::path& path, const std::vector<TrainingRecord>& records);
std::vector<TrainingRecord> load_training_set(const std::filesystem::path& path);

std::vector<LabeledFeatures> to_labeled(const std::vector<TrainingRecord>& records);

nlohmann::json to_json(const LdaModel& model);
LdaModel lda_model_from_json(const nlohmann::json& j);
void save_model(const std::filesystem::path& path, const LdaModel& model);
LdaModel load_model(const std::filesystem::path& path);

}  // namespace negotiation::intent
