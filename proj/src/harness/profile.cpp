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


#include "negotiation/harness/profile.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "negotiation/core/errors.hpp"

namespace negotiation::harness {

using nlohmann::json;

const human::HumanParams& HumanProfile::for_commitment(Commitment c) const
{
  switch (c) {
    case Commitment::Hard:
      return hard;
    case Commitment::Soft:
      return soft;
    case Commitment::Follower:
      return follower;
  }
  return follower;
}

human::HumanParams HumanProfile::soft_defaults()
{
  auto p = human::HumanParams::defaults(Commitment::Soft, 0);
  p.escalation_time = 8.0;
  p.yield_stretch = 17.0;
  return p;
}

Profile Profile::defaults()
{
  return Profile{};
}

Profile Profile::realistic()
{
  Profile p;
  p.human.hard.swap_error_prob = 0.05;
  p.human.soft.swap_error_prob = 0.05;
  return p;
}

signal::SensingParams Profile::sensing() const
{
  return {rates.sensing_hz, rates.control_hz, filter_cutoff_hz, filter_order};
}

namespace {

bool divides(double fast, double slow)
{
  const double ratio = fast / slow;
  return slow > 0.0 && ratio >= 1.0 && std::abs(ratio - std::round(ratio)) < 1e-9;
}

void check_range(const std::array<double, 2>& r, const char* what)
{
  if (!(r[0] >= 0.0) || !(r[0] <= r[1])) {
    throw ConfigError(std::string(what) + " must be an ordered non-negative range");
  }
}

}  // namespace

void Profile::validate() const
{
  goals.validate();
  admittance.validate();
  sampler.validate();
  hlc.validate();
  if (std::abs(admittance.dt * rates.control_hz - 1.0) > 1e-9) {
    throw ConfigError("admittance dt must equal 1 / control rate");
  }
  if (!divides(rates.control_hz, rates.hlc_hz) || !divides(rates.control_hz, rates.intent_hz)) {
    throw ConfigError("HLC and intent rates must divide the control rate");
  }
  if (std::abs(hlc.tick_hz - rates.hlc_hz) > 1e-9) {
    throw ConfigError("HLC tick rate must match rates.hlc_hz");
  }
  // Sensing is resampled by hold, so it only has to be no faster than control.
  if (!(rates.sensing_hz > 0.0) || rates.sensing_hz > rates.control_hz) {
    throw ConfigError("sensing rate must be positive and at most the control rate");
  }
  if (!(t_transient > admittance.dt)) {
    throw ConfigError("t_transient must exceed the control period");
  }
  if (!(max_duration > 0.0)) {
    throw ConfigError("max_duration must be positive");
  }
  if (!(intent.idle_threshold >= 0.0) || !(intent.commit_duration > 0.0) || !(intent.hysteresis >= 0.0) ||
      !(intent.ridge_scale >= 0.0)) {
    throw ConfigError("intent parameters out of range");
  }
  check_range(human.nominal_force_range, "human.nominal_force_range");
  check_range(human.reaction_delay_range, "human.reaction_delay_range");
  check_range(human.yield_hold_range, "human.yield_hold_range");
  check_range(training.nominal_force_range, "training.nominal_force_range");
  check_range(training.reaction_delay_range, "training.reaction_delay_range");
  if (training.n_trials == 0) {
    throw ConfigError("training.n_trials must be positive");
  }
  human.hard.validate(sampler.limits.f_max);
  human.soft.validate(sampler.limits.f_max);
  human.follower.validate(sampler.limits.f_max);
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& value)
{
  if (auto it = j.find(key); it != j.end()) {
    value = it->get<T>();
  }
}

json pose_json(const PlanarPose& p)
{
  return json::array({p.x, p.y, p.theta});
}

PlanarPose pose_from(const json& j)
{
  if (!j.is_array() || j.size() < 2 || j.size() > 3) {
    throw ConfigError("pose must be [x, y] or [x, y, theta]");
  }
  PlanarPose p{j[0].get<double>(), j[1].get<double>(), j.size() == 3 ? j[2].get<double>() : 0.0};
  return p.normalized();
}

json human_json(const human::HumanParams& h)
{
  return {{"reaction_delay", h.reaction_delay},
          {"force_cap", h.force_cap},
          {"nominal_force", h.nominal_force},
          {"escalation_time", h.escalation_time},
          {"buildup_tau", h.buildup_tau},
          {"yield_stretch", h.yield_stretch},
          {"yield_hold", h.yield_hold},
          {"noise_std", h.noise_std},
          {"swap_error_prob", h.swap_error_prob},
          {"heading_wobble_std", h.heading_wobble_std},
          {"heading_wobble_tau", h.heading_wobble_tau},
          {"follow_speed_threshold", h.follow_speed_threshold},
          {"conflict_angle_deg", h.conflict_angle_deg},
          {"conflict_min_force", h.conflict_min_force},
          {"approach_radius", h.approach_radius},
          {"approach_min_fraction", h.approach_min_fraction},
          {"lateral_damping", h.lateral_damping}};
}

void read_human(const json& j, human::HumanParams& h)
{
  read(j, "reaction_delay", h.reaction_delay);
  read(j, "force_cap", h.force_cap);
  read(j, "nominal_force", h.nominal_force);
  read(j, "escalation_time", h.escalation_time);
  read(j, "buildup_tau", h.buildup_tau);
  read(j, "yield_stretch", h.yield_stretch);
  read(j, "yield_hold", h.yield_hold);
  read(j, "noise_std", h.noise_std);
  read(j, "swap_error_prob", h.swap_error_prob);
  read(j, "heading_wobble_std", h.heading_wobble_std);
  read(j, "heading_wobble_tau", h.heading_wobble_tau);
  read(j, "follow_speed_threshold", h.follow_speed_threshold);
  read(j, "conflict_angle_deg", h.conflict_angle_deg);
  read(j, "conflict_min_force", h.conflict_min_force);
  read(j, "approach_radius", h.approach_radius);
  read(j, "approach_min_fraction", h.approach_min_fraction);
  read(j, "lateral_damping", h.lateral_damping);
}

}  // namespace

json to_json(const Profile& p)
{
  json sites = json::array();
  for (const auto& s : p.goals.sites) {
    sites.push_back(pose_json(s));
  }
  const auto& a = p.admittance;
  const auto& h = p.hlc;
  return {
      {"goals", {{"sites", sites}, {"reach_tolerance", p.goals.reach_tolerance}, {"start", pose_json(p.goals.start)}}},
      {"admittance",
       {{"mass_linear", a.mass_linear},
        {"inertia_rotational", a.inertia_rotational},
        {"damping_linear", a.damping_linear},
        {"damping_rotational", a.damping_rotational},
        {"v_max_linear", a.v_max_linear},
        {"v_max_rotational", a.v_max_rotational}}},
      {"action",
       {{"t_transient", p.t_transient},
        {"f_min", p.sampler.limits.f_min},
        {"f_max", p.sampler.limits.f_max},
        {"sigma", p.sampler.sigma},
        {"level_means", p.sampler.level_means},
        {"level_probs",
         {{"kcg", p.sampler.level_probs[0]}, {"soft", p.sampler.level_probs[1]}, {"hard", p.sampler.level_probs[2]}}}}},
      {"filter", {{"cutoff_hz", p.filter_cutoff_hz}, {"order", p.filter_order}}},
      {"intent",
       {{"idle_threshold", p.intent.idle_threshold},
        {"commit_duration", p.intent.commit_duration},
        {"hysteresis", p.intent.hysteresis},
        {"lambda", p.intent.lambda ? json(*p.intent.lambda) : json(nullptr)},
        {"ridge_scale", p.intent.ridge_scale}}},
      {"hlc",
       {{"f_conflict_threshold", h.f_conflict_threshold},
        {"f_abort", h.f_abort},
        {"escalation_rate_max", h.escalation_rate_max},
        {"deescalation_rate", h.deescalation_rate},
        {"ahg_timeout", h.ahg_timeout},
        {"abort_ramp", h.abort_ramp},
        {"desired_speed", h.desired_speed},
        {"ahg_trigger_hold", h.ahg_trigger_hold},
        {"kcg_settle", h.kcg_settle}}},
      {"human",
       {{"hard", human_json(p.human.hard)},
        {"soft", human_json(p.human.soft)},
        {"follower", human_json(p.human.follower)},
        {"nominal_force_range", p.human.nominal_force_range},
        {"reaction_delay_range", p.human.reaction_delay_range},
        {"yield_hold_range", p.human.yield_hold_range}}},
      {"training",
       {{"n_trials", p.training.n_trials},
        {"seed", p.training.seed},
        {"nominal_force_range", p.training.nominal_force_range},
        {"reaction_delay_range", p.training.reaction_delay_range},
        {"heading_wobble_std", p.training.heading_wobble_std},
        {"max_trial_duration", p.training.max_trial_duration}}},
      {"rates",
       {{"control_hz", p.rates.control_hz},
        {"hlc_hz", p.rates.hlc_hz},
        {"intent_hz", p.rates.intent_hz},
        {"sensing_hz", p.rates.sensing_hz}}},
      {"max_duration", p.max_duration},
  };
}

Profile profile_from_json(const json& j, const Profile& base)
{
  if (!j.is_object()) {
    throw ConfigError("profile must be a JSON object");
  }
  Profile p = base;
  try {
    if (auto g = j.find("goals"); g != j.end()) {
      if (auto s = g->find("sites"); s != g->end()) {
        p.goals.sites.clear();
        for (const auto& site : *s) {
          p.goals.sites.push_back(pose_from(site));
        }
      }
      read(*g, "reach_tolerance", p.goals.reach_tolerance);
      if (auto s = g->find("start"); s != g->end()) {
        p.goals.start = pose_from(*s);
      }
    }
    if (auto a = j.find("admittance"); a != j.end()) {
      read(*a, "mass_linear", p.admittance.mass_linear);
      read(*a, "inertia_rotational", p.admittance.inertia_rotational);
      read(*a, "damping_linear", p.admittance.damping_linear);
      read(*a, "damping_rotational", p.admittance.damping_rotational);
      read(*a, "v_max_linear", p.admittance.v_max_linear);
      read(*a, "v_max_rotational", p.admittance.v_max_rotational);
    }
    if (auto a = j.find("action"); a != j.end()) {
      read(*a, "t_transient", p.t_transient);
      read(*a, "f_min", p.sampler.limits.f_min);
      read(*a, "f_max", p.sampler.limits.f_max);
      read(*a, "sigma", p.sampler.sigma);
      read(*a, "level_means", p.sampler.level_means);
      if (auto lp = a->find("level_probs"); lp != a->end()) {
        read(*lp, "kcg", p.sampler.level_probs[0]);
        read(*lp, "soft", p.sampler.level_probs[1]);
        read(*lp, "hard", p.sampler.level_probs[2]);
      }
    }
    if (auto f = j.find("filter"); f != j.end()) {
      read(*f, "cutoff_hz", p.filter_cutoff_hz);
      read(*f, "order", p.filter_order);
    }
    if (auto i = j.find("intent"); i != j.end()) {
      read(*i, "idle_threshold", p.intent.idle_threshold);
      read(*i, "commit_duration", p.intent.commit_duration);
      read(*i, "hysteresis", p.intent.hysteresis);
      read(*i, "ridge_scale", p.intent.ridge_scale);
      if (auto l = i->find("lambda"); l != i->end()) {
        p.intent.lambda = l->is_null() ? std::nullopt : std::optional<double>(l->get<double>());
      }
    }
    if (auto h = j.find("hlc"); h != j.end()) {
      read(*h, "f_conflict_threshold", p.hlc.f_conflict_threshold);
      read(*h, "f_abort", p.hlc.f_abort);
      read(*h, "escalation_rate_max", p.hlc.escalation_rate_max);
      read(*h, "deescalation_rate", p.hlc.deescalation_rate);
      read(*h, "ahg_timeout", p.hlc.ahg_timeout);
      read(*h, "abort_ramp", p.hlc.abort_ramp);
      read(*h, "desired_speed", p.hlc.desired_speed);
      read(*h, "ahg_trigger_hold", p.hlc.ahg_trigger_hold);
      read(*h, "kcg_settle", p.hlc.kcg_settle);
    }
    if (auto h = j.find("human"); h != j.end()) {
      if (auto x = h->find("hard"); x != h->end()) {
        read_human(*x, p.human.hard);
      }
      if (auto x = h->find("soft"); x != h->end()) {
        read_human(*x, p.human.soft);
      }
      if (auto x = h->find("follower"); x != h->end()) {
        read_human(*x, p.human.follower);
      }
      read(*h, "nominal_force_range", p.human.nominal_force_range);
      read(*h, "reaction_delay_range", p.human.reaction_delay_range);
      read(*h, "yield_hold_range", p.human.yield_hold_range);
    }
    if (auto t = j.find("training"); t != j.end()) {
      read(*t, "n_trials", p.training.n_trials);
      read(*t, "seed", p.training.seed);
      read(*t, "nominal_force_range", p.training.nominal_force_range);
      read(*t, "reaction_delay_range", p.training.reaction_delay_range);
      read(*t, "heading_wobble_std", p.training.heading_wobble_std);
      read(*t, "max_trial_duration", p.training.max_trial_duration);
    }
    if (auto r = j.find("rates"); r != j.end()) {
      read(*r, "control_hz", p.rates.control_hz);
      read(*r, "hlc_hz", p.rates.hlc_hz);
      read(*r, "intent_hz", p.rates.intent_hz);
      read(*r, "sensing_hz", p.rates.sensing_hz);
    }
    read(j, "max_duration", p.max_duration);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("profile: ") + e.what());
  }
  // Derived quantities follow the rates.
  p.admittance.dt = 1.0 / p.rates.control_hz;
  p.hlc.tick_hz = p.rates.hlc_hz;
  p.validate();
  return p;
}

Profile load_profile(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open profile " + path.string());
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("profile " + path.string() + ": " + e.what());
  }
  return profile_from_json(j);
}

void save_profile(const std::filesystem::path& path, const Profile& p)
{
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write profile " + path.string());
  }
  out << to_json(p).dump(2) << '\n';
}

Profile profile_from_environment()
{
  const char* path = std::getenv(kProfileEnvVar);
  if (path == nullptr || *path == '\0') {
    return Profile::defaults();
  }
  return load_profile(path);
}

}  // namespace negotiation::harness
