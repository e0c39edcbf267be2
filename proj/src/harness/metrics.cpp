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


#include "negotiation/harness/metrics.hpp"

#include <cmath>

#include "negotiation/core/errors.hpp"
#include "negotiation/intent/io.hpp"

namespace negotiation::harness {

using nlohmann::json;

std::string_view to_string(Winner w)
{
  switch (w) {
    case Winner::Robot:
      return "robot";
    case Winner::Human:
      return "human";
    case Winner::None:
      return "none";
  }
  return "none";
}

std::optional<Winner> winner_from_string(std::string_view s)
{
  for (Winner w : {Winner::Robot, Winner::Human, Winner::None}) {
    if (to_string(w) == s) {
      return w;
    }
  }
  return std::nullopt;
}

double SwitchStats::mean_agreement() const
{
  return agreement_segments ? agreement_time / static_cast<double>(agreement_segments) : 0.0;
}

double SwitchStats::mean_disagreement() const
{
  return disagreement_segments ? disagreement_time / static_cast<double>(disagreement_segments) : 0.0;
}

namespace {

enum class RunKind { Agree, Disagree, Other };

RunKind classify(hlc::Phase p)
{
  switch (p) {
    case hlc::Phase::Agreement:
    case hlc::Phase::AhgAgreement:
      return RunKind::Agree;
    case hlc::Phase::Disagreement:
    case hlc::Phase::AhgDisagreement:
      return RunKind::Disagree;
    default:
      return RunKind::Other;
  }
}

}  // namespace

SwitchStats switch_stats(const std::vector<hlc::Phase>& trace, double dt)
{
  SwitchStats s;
  RunKind current = RunKind::Other;
  std::optional<RunKind> previous_run;
  std::size_t length = 0;

  auto close = [&]() {
    if (current == RunKind::Other || length == 0) {
      return;
    }
    const double d = static_cast<double>(length) * dt;
    if (current == RunKind::Agree) {
      ++s.agreement_segments;
      s.agreement_time += d;
    } else {
      ++s.disagreement_segments;
      s.disagreement_time += d;
    }
    if (previous_run && *previous_run != current) {
      ++s.n_switches;
    }
    previous_run = current;
  };

  for (hlc::Phase p : trace) {
    const RunKind k = classify(p);
    if (k != current) {
      close();
      current = k;
      length = 0;
    }
    ++length;
  }
  close();
  return s;
}

bool success_rule(const RobotAssignment& robot, const GoalAssignment& human, const TrialOutcome& outcome)
{
  const bool placed = outcome.kind == OutcomeKind::Nominal || outcome.kind == OutcomeKind::Forced;
  if (!placed || !outcome.goal) {
    return false;
  }
  const GoalIndex g = *outcome.goal;
  switch (robot.mode) {
    case RobotMode::Follower:
      return outcome.kind == OutcomeKind::Nominal && human.goal_index && g == *human.goal_index;
    case RobotMode::Kcg:
    case RobotMode::Hard:
      return g == *robot.goal;
    case RobotMode::Soft:
      switch (human.commitment) {
        case Commitment::Soft:
          return g == *robot.goal || g == *human.goal_index;
        case Commitment::Follower:
          return g == *robot.goal;
        case Commitment::Hard:
          return g == *human.goal_index;
      }
  }
  return false;
}

Winner winner_of(const RobotAssignment& robot, const GoalAssignment& human, const TrialOutcome& outcome)
{
  const bool placed = outcome.kind == OutcomeKind::Nominal || outcome.kind == OutcomeKind::Forced;
  if (!placed || !outcome.goal) {
    return Winner::None;
  }
  const bool robot_goal = robot.goal && *robot.goal == *outcome.goal;
  const bool human_goal = human.goal_index && *human.goal_index == *outcome.goal;
  if (robot_goal == human_goal) {
    return Winner::None;
  }
  return robot_goal ? Winner::Robot : Winner::Human;
}

TrialMetrics compute_metrics(const TrialLog& log)
{
  if (!log.outcome) {
    throw IncompleteLog("trial log has no outcome");
  }
  if (log.ticks.empty()) {
    throw IncompleteLog("trial log has no tick records");
  }
  const auto& o = *log.outcome;
  TrialMetrics m;
  m.outcome = o.kind;
  m.final_goal = o.goal;
  m.duration = o.duration;
  m.success = success_rule(log.config.robot, log.config.human, o);
  m.winner = winner_of(log.config.robot, log.config.human, o);

  std::vector<hlc::Phase> trace;
  bool started = false;
  for (const auto& r : log.ticks) {
    started = started || (r.hlc_tick && r.intent.has_value());
    if (started) {
      trace.push_back(r.phase);
    }
  }
  m.switching = switch_stats(trace, 1.0 / log.config.profile.rates.control_hz);
  m.n_switches = m.switching.n_switches;
  m.mean_agreement = m.switching.mean_agreement();
  m.mean_disagreement = m.switching.mean_disagreement();
  return m;
}

json to_json(const TrialMetrics& m)
{
  return {{"success", m.success},
          {"winner", std::string(to_string(m.winner))},
          {"outcome", std::string(to_string(m.outcome))},
          {"final_goal", m.final_goal ? json(goal_name(*m.final_goal)) : json(nullptr)},
          {"duration", m.duration},
          {"n_switches", m.n_switches},
          {"mean_agreement", m.mean_agreement},
          {"mean_disagreement", m.mean_disagreement},
          {"agreement_segments", m.switching.agreement_segments},
          {"disagreement_segments", m.switching.disagreement_segments},
          {"agreement_time", m.switching.agreement_time},
          {"disagreement_time", m.switching.disagreement_time}};
}

TrialMetrics trial_metrics_from_json(const json& j)
{
  try {
    TrialMetrics m;
    m.success = j.at("success").get<bool>();
    const auto w = winner_from_string(j.at("winner").get<std::string>());
    const auto o = outcome_kind_from_string(j.at("outcome").get<std::string>());
    if (!w || !o) {
      throw ParseError("metrics: unknown winner or outcome");
    }
    m.winner = *w;
    m.outcome = *o;
    const auto& g = j.at("final_goal");
    if (!g.is_null()) {
      m.final_goal = intent::parse_goal_name(g.get<std::string>());
    }
    m.duration = j.at("duration").get<double>();
    m.n_switches = j.at("n_switches").get<std::size_t>();
    m.mean_agreement = j.at("mean_agreement").get<double>();
    m.mean_disagreement = j.at("mean_disagreement").get<double>();
    m.switching.n_switches = m.n_switches;
    m.switching.agreement_segments = j.at("agreement_segments").get<std::size_t>();
    m.switching.disagreement_segments = j.at("disagreement_segments").get<std::size_t>();
    m.switching.agreement_time = j.at("agreement_time").get<double>();
    m.switching.disagreement_time = j.at("disagreement_time").get<double>();
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("metrics: ") + e.what());
  }
}

Interval wilson_interval(std::size_t successes, std::size_t n, double z)
{
  if (n == 0) {
    return {0.0, 1.0};
  }
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace negotiation::harness
