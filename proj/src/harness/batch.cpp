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

#include "negotiation/harness/batch.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <ostream>
#include <random>
#include <thread>

#include "negotiation/core/errors.hpp"
#include "negotiation/harness/default_model.hpp"
#include "negotiation/harness/log_io.hpp"

namespace negotiation::harness {

using nlohmann::json;

namespace {

constexpr std::uint64_t kGeneratorStream = 0;
constexpr std::uint64_t kTrialSeedBase = 1000;

std::vector<std::pair<RobotMode, Commitment>> other_pairs()
{
  std::vector<std::pair<RobotMode, Commitment>> pairs;
  for (auto r : {RobotMode::Follower, RobotMode::Hard, RobotMode::Soft}) {
    for (auto h : {Commitment::Follower, Commitment::Hard, Commitment::Soft}) {
      const bool idle = r == RobotMode::Follower && h == Commitment::Follower;
      const bool soft_soft = r == RobotMode::Soft && h == Commitment::Soft;
      if (!idle && !soft_soft) {
        pairs.emplace_back(r, h);
      }
    }
  }
  return pairs;
}

std::string fmt(double v)
{
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6f", v);
  return buf.data();
}

json interval_json(std::size_t k, std::size_t n)
{
  const auto ci = wilson_interval(k, n);
  return {{"count", k}, {"rate", n ? static_cast<double>(k) / static_cast<double>(n) : 0.0}, {"ci95", {ci.lo, ci.hi}}};
}

json group_json(const GroupSummary& g)
{
  const auto n = g.completed();
  return {{"n", g.n},
          {"failed", g.failed},
          {"success", interval_json(g.successes, n)},
          {"robot_win", interval_json(g.robot_wins, n)},
          {"human_win", interval_json(g.human_wins, n)},
          {"abort", interval_json(g.aborts, n)},
          {"timeout", interval_json(g.timeouts, n)},
          {"mean_switches", g.mean_switches()},
          {"mean_agreement", g.mean_agreement()},
          {"mean_disagreement", g.mean_disagreement()}};
}

}  // namespace

std::string role_pair_name(RobotMode robot, Commitment human)
{
  return std::string(to_string(robot)) + "-" + std::string(to_string(human));
}

std::string role_pair_name(const TrialConfig& c) { return role_pair_name(c.robot.mode, c.human.commitment); }

std::vector<TrialConfig> generate_configs(const AssignmentGenerator& gen, const Profile& profile)
{
  if (gen.soft_soft_prob < 0.0 || gen.soft_soft_prob > 1.0) {
    throw ConfigError("soft_soft_prob must lie in [0, 1]");
  }
  const std::size_t n_goals = profile.goals.size();
  if (n_goals < 2) {
    throw ConfigError("batch generation needs at least two goals");
  }
  std::mt19937_64 rng(derive_seed(gen.seed, kGeneratorStream));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<GoalIndex> goal(0, n_goals - 1);
  const auto others = other_pairs();
  std::uniform_int_distribution<std::size_t> pick(0, others.size() - 1);

  std::vector<TrialConfig> configs;
  configs.reserve(gen.n_trials);
  for (std::size_t i = 0; i < gen.n_trials; ++i) {
    std::pair<RobotMode, Commitment> pair{RobotMode::Soft, Commitment::Soft};
    if (gen.fixed_pair) {
      pair = *gen.fixed_pair;
    } else if (unit(rng) >= gen.soft_soft_prob) {
      pair = others[pick(rng)];
    }
    const GoalIndex g_robot = goal(rng);
    GoalIndex g_human = goal(rng);
    while (g_human == g_robot) {
      g_human = goal(rng);
    }

    TrialConfig c;
    c.profile = profile;
    c.seed = derive_seed(gen.seed, kTrialSeedBase + i);
    c.robot = pair.first == RobotMode::Follower ? RobotAssignment::follower()
                                                : RobotAssignment{pair.first, g_robot};
    c.human = pair.second == Commitment::Follower ? GoalAssignment::follower()
                                                  : GoalAssignment{g_human, pair.second};
    configs.push_back(std::move(c));
  }
  return configs;
}

void GroupSummary::add(const BatchRow& row)
{
  ++n;
  if (!row.metrics) {
    ++failed;
    return;
  }
  const auto& m = *row.metrics;
  successes += m.success;
  robot_wins += m.winner == Winner::Robot;
  human_wins += m.winner == Winner::Human;
  aborts += m.outcome == OutcomeKind::Aborted;
  timeouts += m.outcome == OutcomeKind::Timeout;
  switches += m.n_switches;
  agreement_segments += m.switching.agreement_segments;
  disagreement_segments += m.switching.disagreement_segments;
  agreement_time += m.switching.agreement_time;
  disagreement_time += m.switching.disagreement_time;
}

double GroupSummary::rate(std::size_t count) const
{
  return completed() ? static_cast<double>(count) / static_cast<double>(completed()) : 0.0;
}

double GroupSummary::mean_switches() const { return rate(switches); }

double GroupSummary::mean_agreement() const
{
  return agreement_segments ? agreement_time / static_cast<double>(agreement_segments) : 0.0;
}

double GroupSummary::mean_disagreement() const
{
  return disagreement_segments ? disagreement_time / static_cast<double>(disagreement_segments) : 0.0;
}

BatchResult run_batch(const std::vector<TrialConfig>& configs, const BatchOptions& options)
{
  BatchResult result;
  result.rows.resize(configs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      BatchRow& row = result.rows[i];
      row.index = i;
      row.config = configs[i];
      try {
        auto model = options.model ? options.model : default_intent_model(configs[i].profile);
        const TrialLog log = run_trial(configs[i], std::move(model));
        row.metrics = compute_metrics(log);
        if (options.digests) {
          row.digest = hex_digest(log_digest(log));
        }
      } catch (const std::exception& e) {
        row.failure = e.what();
      }
    }
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(configs.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  for (const auto& row : result.rows) {
    result.overall.add(row);
    result.by_pair[role_pair_name(row.config)].add(row);
  }
  return result;
}

void write_batch_csv(std::ostream& out, const BatchResult& result)
{
  out << "index,robot,human,seed,success,winner,outcome,final_goal,duration,n_switches,"
         "mean_agreement,mean_disagreement,digest,failure\n";
  for (const auto& row : result.rows) {
    out << row.index << ',' << format_assignment(row.config.robot) << ',' << format_assignment(row.config.human)
        << ',' << row.config.seed << ',';
    if (row.metrics) {
      const auto& m = *row.metrics;
      out << (m.success ? 1 : 0) << ',' << to_string(m.winner) << ',' << to_string(m.outcome) << ','
          << (m.final_goal ? goal_name(*m.final_goal) : std::string()) << ',' << fmt(m.duration) << ','
          << m.n_switches << ',' << fmt(m.mean_agreement) << ',' << fmt(m.mean_disagreement) << ',';
    } else {
      out << ",,,,,,,,";
    }
    std::string failure = row.failure;
    std::replace(failure.begin(), failure.end(), '"', '\'');
    out << row.digest << ',' << (failure.empty() ? "" : "\"" + failure + "\"") << '\n';
  }
}

json batch_summary_json(const BatchResult& result)
{
  json pairs = json::object();
  for (const auto& [name, g] : result.by_pair) {
    pairs[name] = group_json(g);
  }
  return {{"overall", group_json(result.overall)}, {"by_pair", pairs}};
}

}  // namespace negotiation::harness
