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

#include <deque>
#include <map>
#include <optional>

#include "negotiation/core/goals.hpp"
#include "negotiation/intent/lda.hpp"

namespace negotiation::intent {

/// Sliding vote over the most recent non-idle labels, covering commit_duration
/// at the classifier rate.
///
/// A goal commits once the window is full and the goal holds a strict majority
/// with at least a two-vote lead over all other labels combined, so a strictly
/// alternating stream can never commit on an odd-sized window.
class IntentAccumulator {
 public:
  IntentAccumulator(double commit_duration = 0.5, double rate_hz = 250.0);

  /// Idle estimates are skipped. Returns the committed goal, if any.
  std::optional<GoalIndex> accumulate(const IntentEstimate& est);

  /// Most frequent label in the window (lowest index on ties), even if not committed.
  std::optional<GoalIndex> majority() const;
  std::optional<GoalIndex> committed() const;

  std::size_t window_size() const { return capacity_; }
  std::size_t fill() const { return window_.size(); }
  void reset();

 private:
  std::size_t capacity_;
  std::deque<GoalIndex> window_;
  std::map<GoalIndex, std::size_t> counts_;
};

/// Label handed to the state machines; std::nullopt means idle.
using IntentLabel = std::optional<GoalIndex>;

/// A changed label must persist for `hold` seconds before it is passed on.
class LabelHysteresis {
 public:
  explicit LabelHysteresis(double hold = 0.2) : hold_(hold) {}

  IntentLabel update(const IntentLabel& raw, double t);
  IntentLabel current() const { return current_; }
  void reset();

 private:
  double hold_;
  IntentLabel current_;
  IntentLabel candidate_;
  std::optional<double> candidate_since_;
};

}  // namespace negotiation::intent
