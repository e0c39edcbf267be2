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

#include "negotiation/intent/accumulator.hpp"

#include <cmath>

#include "negotiation/core/errors.hpp"

namespace negotiation::intent {

IntentAccumulator::IntentAccumulator(double commit_duration, double rate_hz)
{
  if (!(commit_duration > 0.0) || !(rate_hz > 0.0)) {
    throw ConfigError("accumulator needs positive commit duration and rate");
  }
  capacity_ = static_cast<std::size_t>(std::llround(commit_duration * rate_hz));
  if (capacity_ == 0) {
    capacity_ = 1;
  }
}

std::optional<GoalIndex> IntentAccumulator::accumulate(const IntentEstimate& est)
{
  if (!est.idle()) {
    window_.push_back(*est.label);
    ++counts_[*est.label];
    if (window_.size() > capacity_) {
      const GoalIndex old = window_.front();
      window_.pop_front();
      if (--counts_[old] == 0) {
        counts_.erase(old);
      }
    }
  }
  return committed();
}

std::optional<GoalIndex> IntentAccumulator::majority() const
{
  std::optional<GoalIndex> best;
  std::size_t best_count = 0;
  for (const auto& [label, count] : counts_) {
    if (count > best_count) {
      best = label;
      best_count = count;
    }
  }
  return best;
}

std::optional<GoalIndex> IntentAccumulator::committed() const
{
  if (window_.size() < capacity_) {
    return std::nullopt;
  }
  for (const auto& [label, count] : counts_) {
    const std::size_t rest = window_.size() - count;
    if (count >= rest + 2) {
      return label;
    }
  }
  return std::nullopt;
}

void IntentAccumulator::reset()
{
  window_.clear();
  counts_.clear();
}

IntentLabel LabelHysteresis::update(const IntentLabel& raw, double t)
{
  if (raw == current_) {
    candidate_since_.reset();
    return current_;
  }
  if (!candidate_since_ || raw != candidate_) {
    candidate_ = raw;
    candidate_since_ = t;
  }
  // Half a microsecond of slack keeps the hold exact on a fixed-rate grid.
  if (t - *candidate_since_ + 5e-7 >= hold_) {
    current_ = candidate_;
    candidate_since_.reset();
  }
  return current_;
}

void LabelHysteresis::reset()
{
  current_.reset();
  candidate_.reset();
  candidate_since_.reset();
}

}  // namespace negotiation::intent
