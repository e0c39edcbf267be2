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
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "negotiation/harness/metrics.hpp"
#include "negotiation/harness/trial.hpp"

namespace negotiation::harness {

inline constexpr int kTrialLogVersion = 1;

enum class LogFormat { Jsonl, Binary };

std::string_view to_string(LogFormat f);
std::optional<LogFormat> log_format_from_string(std::string_view s);

nlohmann::json to_json(const TrialOutcome& o);
TrialOutcome trial_outcome_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrialEvent& e);
TrialEvent trial_event_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TickRecord& r);
TickRecord tick_record_from_json(const nlohmann::json& j);

/// A log read back from disk, with the metrics recorded at run time if any.
struct StoredLog {
  TrialLog log;
  std::optional<TrialMetrics> metrics;
};

/// JSON lines: a header record carrying the config, one record per control
/// tick, one per event, then the outcome and (optionally) the metrics.
/// Every line has a "type" field.
void write_jsonl(std::ostream& out, const TrialLog& log, const TrialMetrics* metrics = nullptr);
StoredLog read_jsonl(std::istream& in);

/// Columnar binary: magic "NGLOG", a version word, the header and trailer as
/// JSON blobs, and each tick field stored as a contiguous little-endian column.
void write_binary(std::ostream& out, const TrialLog& log, const TrialMetrics* metrics = nullptr);
StoredLog read_binary(std::istream& in);

void save_log(const std::filesystem::path& path, const TrialLog& log, LogFormat format,
              const TrialMetrics* metrics = nullptr);
/// Detects the format from the leading bytes.
StoredLog load_log(const std::filesystem::path& path);

/// FNV-1a over the JSONL serialization. Equal digests mean byte-identical logs.
std::uint64_t log_digest(const TrialLog& log);
std::string hex_digest(std::uint64_t d);

}  // namespace negotiation::harness
