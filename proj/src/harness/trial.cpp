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


#include "negotiation/harness/trial.hpp"

#include <algorithm>
#include <cmath>

#include "negotiation/core/errors.hpp"
#include "negotiation/intent/io.hpp"

namespace negotiation::harness {

using nlohmann::json;

std::string_view to_string(RobotMode m)
{
  switch (m) {
    case RobotMode::Follower:
      return "follower";
    case RobotMode::Kcg:
      return "kcg";
    case RobotMode::Hard:
      return "hard";
    case RobotMode::Soft:
      return "soft";
  }
  return "follower";
}

std::optional<RobotMode> robot_mode_from_string(std::string_view s)
{
  for (RobotMode m : {RobotMode::Follower, RobotMode::Kcg, RobotMode::Hard, RobotMode::Soft}) {
    if (to_string(m) == s) {
      return m;
    }
  }
  return std::nullopt;
}

bool RobotAssignment::valid(std::size_t n_goals) const
{
  if (mode == RobotMode::Follower) {
    return !goal.has_value();
  }
  return goal.has_value() && *goal < n_goals;
}

namespace {

// Splits "role:gK" into the role and an optional goal index.
std::pair<std::string, std::optional<GoalIndex>> split_assignment(const std::string& s, std::size_t n_goals)
{
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    return {s, std::nullopt};
  }
  const std::string goal = s.substr(colon + 1);
  GoalIndex g = 0;
  try {
    g = intent::parse_goal_name(goal);
  } catch (const ParseError&) {
    throw ConfigError("bad goal '" + goal + "' in assignment '" + s + "'");
  }
  if (g >= n_goals) {
    throw ConfigError("goal '" + goal + "' out of range in assignment '" + s + "'");
  }
  return {s.substr(0, colon), g};
}

}  // namespace

RobotAssignment parse_robot_assignment(const std::string& s, std::size_t n_goals)
{
  auto [role, goal] = split_assignment(s, n_goals);
  const auto mode = robot_mode_from_string(role);
  if (!mode) {
    throw ConfigError("unknown robot role '" + role + "'");
  }
  RobotAssignment a{*mode, goal};
  if (!a.valid(n_goals)) {
    throw ConfigError("robot assignment '" + s + "' needs a goal iff the role is not follower");
  }
  return a;
}

GoalAssignment parse_human_assignment(const std::string& s, std::size_t n_goals)
{
  auto [role, goal] = split_assignment(s, n_goals);
  const auto c = commitment_from_string(role);
  if (!c) {
    throw ConfigError("unknown human commitment '" + role + "'");
  }
  GoalAssignment a{goal, *c};
  if (!a.valid(n_goals)) {
    throw ConfigError("human assignment '" + s + "' needs a goal iff the commitment is not follower");
  }
  return a;
}

std::string format_assignment(const RobotAssignment& a)
{
  std::string s(to_string(a.mode));
  if (a.goal) {
    s += ":" + goal_name(*a.goal);
  }
  return s;
}

std::string format_assignment(const GoalAssignment& a)
{
  std::string s(to_string(a.commitment));
  if (a.goal_index) {
    s += ":" + goal_name(*a.goal_index);
  }
  return s;
}

void TrialConfig::validate() const
{
  profile.validate();
  if (profile.goals.size() != intent::kGoalsPerFeatureSet) {
    throw ConfigError("the intent feature layout needs exactly three goals");
  }
  if (!robot.valid(profile.goals.size())) {
    throw ConfigError("invalid robot assignment");
  }
  if (!human.valid(profile.goals.size())) {
    throw ConfigError("invalid human assignment");
  }
}

json to_json(const TrialConfig& c)
{
  return {{"robot", format_assignment(c.robot)},
          {"human", format_assignment(c.human)},
          {"seed", c.seed},
          {"profile", to_json(c.profile)}};
}

TrialConfig trial_config_from_json(const json& j)
{
  try {
    TrialConfig c;
    c.profile = j.contains("profile") ? profile_from_json(j.at("profile")) : Profile::defaults();
    const auto n = c.profile.goals.size();
    c.robot = parse_robot_assignment(j.at("robot").get<std::string>(), n);
    c.human = parse_human_assignment(j.at("human").get<std::string>(), n);
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("trial config: ") + e.what());
  }
}

std::string_view to_string(OutcomeKind k)
{
  switch (k) {
    case OutcomeKind::Nominal:
      return "nominal";
    case OutcomeKind::Forced:
      return "forced";
    case OutcomeKind::Aborted:
      return "aborted";
    case OutcomeKind::Timeout:
      return "timeout";
  }
  return "timeout";
}

std::optional<OutcomeKind> outcome_kind_from_string(std::string_view s)
{
  for (OutcomeKind k : {OutcomeKind::Nominal, OutcomeKind::Forced, OutcomeKind::Aborted, OutcomeKind::Timeout}) {
    if (to_string(k) == s) {
      return k;
    }
  }
  return std::nullopt;
}

std::string_view to_string(EventKind k)
{
  switch (k) {
    case EventKind::StartBeep:
      return "start_beep";
    case EventKind::GraspBeep:
      return "grasp_beep";
    case EventKind::GoalBeep:
      return "goal_beep";
  }
  return "start_beep";
}

std::optional<EventKind> event_kind_from_string(std::string_view s)
{
  for (EventKind k : {EventKind::StartBeep, EventKind::GraspBeep, EventKind::GoalBeep}) {
    if (to_string(k) == s) {
      return k;
    }
  }
  return std::nullopt;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

ScriptedHuman::ScriptedHuman(human::HumanParams params, const GoalSet& goals, std::uint64_t seed)
  : params_(std::move(params)), goals_(goals), rng_(seed)
{
  state_ = human::init_human(params_, goals_.size(), rng_);
}

PlanarWrench ScriptedHuman::step(double /*t*/, const human::HumanInputs& in, double dt)
{
  state_ = human::human_step(params_, state_, in, goals_, dt, rng_);
  return state_.f_applied;
}

human::HumanParams draw_human_params(const TrialConfig& config)
{
  const auto& hp = config.profile.human;
  human::HumanParams p = hp.for_commitment(config.human.commitment);
  p.commitment = config.human.commitment;
  p.goal_index = config.human.goal_index;
  std::mt19937_64 rng(derive_seed(config.seed, 3));
  p.nominal_force =
      std::uniform_real_distribution<double>(hp.nominal_force_range[0], hp.nominal_force_range[1])(rng);
  p.reaction_delay =
      std::uniform_real_distribution<double>(hp.reaction_delay_range[0], hp.reaction_delay_range[1])(rng);
  p.yield_hold = std::uniform_real_distribution<double>(hp.yield_hold_range[0], hp.yield_hold_range[1])(rng);
  return p;
}

namespace {

hlc::HlcState make_robot(const TrialConfig& c)
{
  const auto seed = derive_seed(c.seed, 1);
  const auto& sampler = c.profile.sampler;
  switch (c.robot.mode) {
    case RobotMode::Follower:
      return hlc::make_follower(seed);
    case RobotMode::Kcg:
      return hlc::make_kcg(*c.robot.goal, sampler, seed);
    case RobotMode::Hard:
      return hlc::make_hard(*c.robot.goal, sampler, seed);
    case RobotMode::Soft:
      return hlc::make_soft(*c.robot.goal, sampler, seed);
  }
  return hlc::make_follower(seed);
}

std::uint64_t ratio(double fast, double slow)
{
  return static_cast<std::uint64_t>(std::llround(fast / slow));
}

const TrialConfig& validated(const TrialConfig& c)
{
  c.validate();
  return c;
}

}  // namespace

TrialEngine::TrialEngine(TrialConfig config, std::shared_ptr<const intent::LdaModel> model,
                         std::unique_ptr<HumanSource> human, bool record_ticks)
  : cfg_(validated(config)),
    model_(std::move(model)),
    human_(std::move(human)),
    record_(record_ticks),
    dt_(1.0 / cfg_.profile.rates.control_hz),
    hlc_every_(ratio(cfg_.profile.rates.control_hz, cfg_.profile.rates.hlc_hz)),
    intent_every_(ratio(cfg_.profile.rates.control_hz, cfg_.profile.rates.intent_hz)),
    max_ticks_(static_cast<std::uint64_t>(std::llround(cfg_.profile.max_duration * cfg_.profile.rates.control_hz))),
    sensing_(cfg_.profile.sensing()),
    admittance_(cfg_.profile.admittance),
    accumulator_(cfg_.profile.intent.commit_duration, cfg_.profile.rates.intent_hz),
    hysteresis_(cfg_.profile.intent.hysteresis),
    hlc_(make_robot(cfg_))
{
  if (!model_) {
    throw ConfigError("trial needs an intent model");
  }
  if (!human_) {
    throw ConfigError("trial needs a human source");
  }
  if (model_->dimension() != intent::kFeatureCount) {
    throw ConfigError("intent model has the wrong feature dimension");
  }
  plant_.pose = cfg_.profile.goals.start;
  action_.t_transient = cfg_.profile.t_transient;
  last_.pose = plant_.pose;
  last_.machine = hlc_.machine;
  last_.phase = hlc_.phase;
  last_.active_goal = hlc_.active_goal;
  log_.config = cfg_;
  emit(EventKind::StartBeep);
}

double TrialEngine::time() const
{
  return static_cast<double>(k_) * dt_;
}

void TrialEngine::emit(EventKind kind, std::optional<GoalIndex> goal)
{
  TrialEvent e{time(), kind, goal};
  log_.events.push_back(e);
  step_events_.push_back(e);
}

void TrialEngine::finish(OutcomeKind kind, std::optional<GoalIndex> goal)
{
  log_.outcome = TrialOutcome{kind, goal, static_cast<double>(k_ + 1) * dt_, plant_.pose};
}

bool TrialEngine::step()
{
  if (finished()) {
    return false;
  }
  step_events_.clear();
  const auto& p = cfg_.profile;
  const auto& goals = p.goals;
  const double t = time();

  TickRecord rec = last_;
  rec.t = t;

  const PlanarWrench raw = human_->step(t, {plant_.pose, plant_.twist, action_.f_act}, dt_);
  if (!grasped_ && t + 1e-9 >= human_->grasp_time()) {
    grasped_ = true;
    emit(EventKind::GraspBeep);
  }
  const PlanarWrench f_h = sensing_.step(t, raw);

  if (k_ % intent_every_ == 0) {
    const auto x = intent::extract_features(plant_.pose, plant_.twist, f_h, action_.f_act, goals,
                                            p.intent.idle_threshold);
    intent::IntentEstimate est = x ? intent::lda_predict(*model_, *x, t) : intent::IntentEstimate::idle_at(t);
    rec.features_valid = x.has_value();
    rec.features = x.value_or(intent::FeatureVector{});
    rec.posteriors = {};
    for (std::size_t i = 0; i < std::min<std::size_t>(3, est.posteriors.size()); ++i) {
      rec.posteriors[i] = est.posteriors[i];
    }
    rec.intent_raw = est.label;
    rec.intent = hysteresis_.update(est.label, t);
    accumulator_.accumulate(est);
    rec.committed = accumulator_.committed();
  }

  rec.stretch = (f_h - action_.f_act).magnitude();

  rec.hlc_tick = grasped_ && k_ % hlc_every_ == 0;
  if (rec.hlc_tick) {
    double v_goal = 0.0;
    if (hlc_.active_goal) {
      try {
        v_goal = project(plant_.twist.linear(), unit_direction(plant_.pose, goals.sites[*hlc_.active_goal]));
      } catch (const DegenerateDirection&) {
      }
    }
    const hlc::HlcInputs in{t, plant_.pose, rec.intent, accumulator_.committed(), accumulator_.majority(),
                            rec.stretch, v_goal};
    auto r = hlc::hlc_step(hlc_, in, goals, p.hlc, p.sampler);
    hlc_ = std::move(r.state);
    if (r.output.reset_accumulator) {
      accumulator_.reset();
      hysteresis_.reset();
    }
    if (r.output.terminated) {
      clear_reference(action_);
      switch (*r.output.terminated) {
        case hlc::Termination::Nominal:
          finish(OutcomeKind::Nominal, hlc_.terminal_goal);
          break;
        case hlc::Termination::Forced:
          finish(OutcomeKind::Forced, hlc_.terminal_goal);
          break;
        case hlc::Termination::Aborted:
          finish(OutcomeKind::Aborted, dynamics::goal_check(plant_.pose, goals));
          break;
      }
    } else if (r.output.goal_direction_target && r.output.magnitude > 0.0) {
      try {
        const Vec2 dir = unit_direction(plant_.pose, goals.sites[*r.output.goal_direction_target]);
        // The abort ramp runs below F_min on its way to zero.
        const action::ForceLimits limits =
            r.output.aborting ? action::ForceLimits{0.0, p.sampler.limits.f_max} : p.sampler.limits;
        set_reference(action_, dir, r.output.magnitude, limits);
      } catch (const DegenerateDirection&) {
        clear_reference(action_);
      }
    } else {
      clear_reference(action_);
    }
  }

  action::action_force_step(action_, dt_, placed_ || finished());
  if (!placed_ && !finished()) {
    admittance_.update(action_.f_act, f_h);
    plant_ = dynamics::plant_step(plant_, admittance_.twist(), dt_);
    if (const auto g = dynamics::goal_check(plant_.pose, goals)) {
      // The tray is set down: the low-level controller holds it in place.
      placed_ = true;
      admittance_.stop();
      plant_.twist = {};
      emit(EventKind::GoalBeep, g);
    }
  } else {
    plant_.twist = {};
    plant_.t += dt_;
  }

  rec.pose = plant_.pose;
  rec.twist = plant_.twist;
  rec.f_human_raw = raw;
  rec.f_human = f_h;
  rec.f_act = action_.f_act;
  rec.f_ref = action_.f_ref;
  rec.machine = hlc_.machine;
  rec.phase = hlc_.phase;
  rec.active_goal = hlc_.active_goal;
  rec.f_mag = hlc_.f_mag;

  if (!finished() && k_ + 1 >= max_ticks_) {
    finish(OutcomeKind::Timeout, dynamics::goal_check(plant_.pose, goals));
  }
  ++k_;
  last_ = rec;
  if (record_) {
    log_.ticks.push_back(rec);
  }
  return !finished();
}

void TrialEngine::run()
{
  while (step()) {
  }
}

TrialLog run_trial(const TrialConfig& config, std::shared_ptr<const intent::LdaModel> model, bool record_ticks)
{
  config.validate();
  auto human = std::make_unique<ScriptedHuman>(draw_human_params(config), config.profile.goals,
                                               derive_seed(config.seed, 2));
  TrialEngine engine(config, std::move(model), std::move(human), record_ticks);
  engine.run();
  return engine.take_log();
}

}  // namespace negotiation::harness
