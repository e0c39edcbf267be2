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
#include <random>
#include <sstream>
#include <string>

#include "negotiation/dynamics/admittance.hpp"
#include "negotiation/hlc/hlc.hpp"

// Random-stream property checks for the behaviour state machines, shared by
// the unit suite and the acceptance run.
namespace hlc_properties {

using namespace negotiation;
using namespace negotiation::hlc;

/// Sticky random input stream: each component keeps its value for a while,
/// so sustained conditions (long conflicts, long stretch) actually occur.
class InputStream {
 public:
  InputStream(std::uint64_t seed, const GoalSet& goals) : rng_(seed), goals_(goals) {}

  HlcInputs next(double t)
  {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng_) < 0.05) {
      const int k = std::uniform_int_distribution<int>(-1, 2)(rng_);
      intent_ = k < 0 ? intent::IntentLabel{} : intent::IntentLabel{static_cast<GoalIndex>(k)};
    }
    if (u(rng_) < 0.04) {
      regime_ = std::uniform_int_distribution<int>(0, 9)(rng_);
    }
    if (u(rng_) < 0.03) {
      const int k = std::uniform_int_distribution<int>(-1, 2)(rng_);
      committed_ = k < 0 ? std::optional<GoalIndex>{} : std::optional<GoalIndex>{static_cast<GoalIndex>(k)};
    }
    HlcInputs in;
    in.t = t;
    in.intent = intent_;
    in.committed = committed_;
    in.perceived_goal = intent_;
    // Mostly low stretch, often between F^C and f_abort, sometimes above.
    if (regime_ <= 4) {
      in.stretch = std::uniform_real_distribution<double>(0.0, 19.0)(rng_);
    } else if (regime_ <= 8) {
      in.stretch = std::uniform_real_distribution<double>(20.5, 29.5)(rng_);
    } else {
      in.stretch = std::uniform_real_distribution<double>(30.5, 45.0)(rng_);
    }
    in.v_goal = std::uniform_real_distribution<double>(-0.5, 0.6)(rng_);
    in.pose = {0.0, 0.2, 0.0};
    if (u(rng_) < 0.002) {
      in.pose = goals_.sites[std::uniform_int_distribution<std::size_t>(0, goals_.size() - 1)(rng_)];
    }
    return in;
  }

 private:
  std::mt19937_64 rng_;
  GoalSet goals_;
  intent::IntentLabel intent_;
  std::optional<GoalIndex> committed_;
  int regime_{0};
};

struct Report {
  long ticks{0};
  long violations{0};
  std::string first_violation;
  long aborts_expected{0};
  long ahg_entries{0};
  long terminal_ticks{0};
};

inline bool in_ahg(const HlcState& s) { return s.phase == Phase::AhgAgreement || s.phase == Phase::AhgDisagreement; }

inline HlcState make_machine(Machine m, GoalIndex g, const action::ForceSampler& sampler, std::uint64_t seed)
{
  switch (m) {
    case Machine::Hard:
      return make_hard(g, sampler, seed);
    case Machine::Soft:
      return make_soft(g, sampler, seed);
    case Machine::Kcg:
      return make_kcg(g, sampler, seed);
    case Machine::Follower:
      break;
  }
  return make_follower(seed);
}

/// Runs 400-tick episodes of the given machine until total_ticks and checks
/// every property on every tick:
///  - terminal phases are absorbing and output nothing;
///  - f_mag stays in [f_min, f_max] while pushing, ramps down in Abort, is 0 otherwise;
///  - Abort fires whenever stretch > f_abort in a goal-pushing machine;
///  - Soft enters AHG iff 15 consecutive conflicting ticks had F^C < stretch <= f_abort.
inline Report check(Machine role, std::uint64_t seed, long total_ticks = 100000)
{
  const GoalSet goals = GoalSet::standard();
  const HlcConfig cfg;
  const action::ForceSampler sampler;
  Report n;
  auto fail = [&n](bool ok, const std::string& what, long episode, int k) {
    if (ok) {
      return;
    }
    if (n.violations++ == 0) {
      std::ostringstream s;
      s << what << " (episode " << episode << ", tick " << k << ")";
      n.first_violation = s.str();
    }
  };

  std::mt19937_64 pick(seed);
  long episode = 0;
  while (n.ticks < total_ticks) {
    InputStream stream(seed * 1000 + static_cast<std::uint64_t>(episode), goals);
    HlcState s = make_machine(role, std::uniform_int_distribution<GoalIndex>(0, 2)(pick), sampler,
                              seed + static_cast<std::uint64_t>(episode));
    int sustained = 0;
    for (int k = 0; k < 400 && n.ticks < total_ticks; ++k, ++n.ticks) {
      const HlcInputs in = stream.next(k * cfg.dt());
      const HlcState before = s;
      const auto r = hlc_step(before, in, goals, cfg, sampler);
      s = r.state;

      if (before.terminal()) {
        ++n.terminal_ticks;
        fail(s.phase == before.phase && s.terminal(), "left a terminal phase", episode, k);
        fail(r.output.terminated.has_value() && r.output.magnitude == 0.0, "output after termination", episode, k);
        continue;
      }

      if (s.terminal() || s.phase == Phase::Perceiving) {
        fail(s.f_mag == 0.0, "nonzero f_mag while not pushing", episode, k);
      } else if (s.phase == Phase::Abort) {
        fail(s.f_mag >= 0.0 && s.f_mag <= sampler.limits.f_max, "abort f_mag out of range", episode, k);
        fail(before.phase != Phase::Abort || s.f_mag <= before.f_mag, "abort ramp increased", episode, k);
      } else {
        fail(s.f_mag >= sampler.limits.f_min && s.f_mag <= sampler.limits.f_max,
             "f_mag outside [f_min, f_max] in " + std::string(to_string(s.phase)), episode, k);
      }
      const double shown = (s.terminal() || s.phase == Phase::Perceiving) ? 0.0 : s.f_mag;
      fail(r.output.magnitude == shown, "output magnitude differs from f_mag", episode, k);

      const bool pushing = before.machine != Machine::Follower && before.phase != Phase::Abort;
      if (pushing && in.stretch > cfg.f_abort) {
        ++n.aborts_expected;
        fail(s.phase == Phase::Abort, "no abort above f_abort", episode, k);
      }
      if (before.phase == Phase::Abort) {
        fail(s.phase == Phase::Abort || s.terminal(), "left Abort", episode, k);
      }

      const bool cycle = (before.machine == Machine::Hard || before.machine == Machine::Soft) && !in_ahg(before) &&
                         (before.phase == Phase::Agreement || before.phase == Phase::Disagreement);
      const bool conflict = in.intent && before.active_goal && *in.intent != *before.active_goal;
      const bool at_goal = dynamics::goal_check(in.pose, goals).has_value();
      if (cycle && !at_goal && in.stretch <= cfg.f_abort) {
        sustained = conflict && in.stretch > cfg.f_conflict_threshold ? sustained + 1 : 0;
      } else {
        sustained = 0;
      }
      const bool entered = !in_ahg(before) && in_ahg(s);
      const bool expected = before.machine == Machine::Soft && cycle && sustained >= cfg.ticks(cfg.ahg_trigger_hold);
      n.ahg_entries += entered;
      fail(entered == expected, entered ? "AHG without sustained stretch" : "sustained stretch without AHG", episode, k);
      if (entered) {
        sustained = 0;
      }
    }
    ++episode;
  }
  return n;
}

}  // namespace hlc_properties
