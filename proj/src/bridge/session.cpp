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

#include "negotiation/bridge/session.hpp"

#include <algorithm>
#include <cmath>

namespace negotiation::bridge {

LiveHuman::LiveHuman(std::shared_ptr<const LiveInput> input, double stale_after)
  : input_(std::move(input)), stale_after_(stale_after)
{
}

PlanarWrench LiveHuman::step(double t, const human::HumanInputs& /*in*/, double /*dt*/)
{
  if (!input_->received_at || t - *input_->received_at > stale_after_) {
    return {};
  }
  return input_->wrench;
}

Session::Session(std::string id, harness::Profile base, ModelProvider models, SessionLimits limits)
  : id_(std::move(id)), base_(std::move(base)), models_(std::move(models)), limits_(limits)
{
  base_.validate();
  if (limits_.snapshot_hz <= 0.0 || limits_.force_cap <= 0.0 || limits_.stale_after <= 0.0) {
    throw ConfigError("session limits must be positive");
  }
  harness::TrialConfig c;
  c.profile = base_;
  restart(std::move(c));
}

void Session::restart(harness::TrialConfig config)
{
  // The live partner has no declared goal.
  config.human = GoalAssignment::follower();
  config.validate();
  auto model = models_(config.profile);
  input_ = std::make_shared<LiveInput>();
  auto human = std::make_unique<LiveHuman>(input_, limits_.stale_after);
  engine_ = std::make_unique<harness::TrialEngine>(config, std::move(model), std::move(human), false);
  config_ = std::move(config);
  outcome_sent_ = false;
  carry_ = 0.0;
  next_snapshot_tick_ = 0;
  pending_events_ = engine_->step_events();
}

ServerMessage Session::message(ServerBody body) { return {id_, ++seq_, std::move(body)}; }

ServerMessage Session::error(const std::string& code, const std::string& what)
{
  return message(ErrorMessage{code, what});
}

Snapshot Session::snapshot() const
{
  const auto& r = engine_->last();
  Snapshot s;
  s.t = engine_->time();
  s.pose = r.pose;
  s.twist = r.twist;
  s.f_act = r.f_act;
  s.f_human = r.f_human;
  s.machine = r.machine;
  s.phase = r.phase;
  s.active_goal = r.active_goal;
  s.intent = r.intent;
  s.posteriors = r.posteriors;
  s.stretch = r.stretch;
  s.paused = paused_;
  s.robot = harness::format_assignment(config_.robot);
  return s;
}

std::vector<ServerMessage> Session::handle_text(std::string_view text)
{
  try {
    return handle(parse_client_message(text));
  } catch (const WireError& e) {
    return {error(e.code(), e.what())};
  }
}

std::vector<ServerMessage> Session::handle(const ClientMessage& m)
{
  if (!m.session.empty() && m.session != id_) {
    return {error("wrong_session", "message addressed to session '" + m.session + "'")};
  }
  if (client_seq_ && m.seq <= *client_seq_) {
    return {error("sequence", "sequence number " + std::to_string(m.seq) + " is not increasing")};
  }
  client_seq_ = m.seq;

  auto with_snapshot = [this] {
    Snapshot s = snapshot();
    s.events = std::exchange(pending_events_, {});
    return std::vector<ServerMessage>{message(std::move(s))};
  };

  if (std::holds_alternative<Join>(m.body)) {
    joined_ = true;
    return with_snapshot();
  }
  if (const auto* f = std::get_if<HumanForce>(&m.body)) {
    Vec2 force{f->fx, f->fy};
    const double n = force.norm();
    if (n > limits_.force_cap) {
      force = force * (limits_.force_cap / n);
    }
    input_->wrench = PlanarWrench::from_force(force);
    input_->received_at = engine_->time();
    return {};
  }
  if (const auto* p = std::get_if<Pause>(&m.body)) {
    paused_ = p->paused;
    return {};
  }
  try {
    harness::TrialConfig c = config_;
    if (const auto* s = std::get_if<SetConfig>(&m.body)) {
      c.profile = s->profile.is_null() ? base_ : harness::profile_from_json(s->profile, base_);
      c.robot = harness::parse_robot_assignment(s->robot, c.profile.goals.size());
      c.seed = s->seed.value_or(config_.seed);
    } else {
      c.seed = std::get<Reset>(m.body).seed.value_or(config_.seed + 1);
    }
    restart(std::move(c));
  } catch (const Error& e) {
    return {error("bad_config", e.what())};
  }
  joined_ = true;
  return with_snapshot();
}

std::vector<ServerMessage> Session::step()
{
  std::vector<ServerMessage> out;
  if (engine_->finished()) {
    return out;
  }
  engine_->step();
  const auto& ev = engine_->step_events();
  pending_events_.insert(pending_events_.end(), ev.begin(), ev.end());

  const double control_hz = config_.profile.rates.control_hz;
  const std::uint64_t k = engine_->tick_count();
  if (k >= next_snapshot_tick_ || engine_->finished()) {
    Snapshot s = snapshot();
    s.events = std::exchange(pending_events_, {});
    out.push_back(message(std::move(s)));
    // Snapshot n falls on the first tick at or after n / snapshot_hz.
    const auto n = static_cast<std::uint64_t>(std::floor(static_cast<double>(k) * limits_.snapshot_hz / control_hz)) + 1;
    next_snapshot_tick_ = static_cast<std::uint64_t>(std::ceil(static_cast<double>(n) * control_hz / limits_.snapshot_hz - 1e-9));
  }
  if (engine_->finished() && !outcome_sent_) {
    outcome_sent_ = true;
    out.push_back(message(Outcome{*engine_->log().outcome}));
  }
  return out;
}

std::vector<ServerMessage> Session::advance(double seconds)
{
  std::vector<ServerMessage> out;
  if (!joined_ || paused_ || seconds <= 0.0) {
    return out;
  }
  const double dt = 1.0 / config_.profile.rates.control_hz;
  carry_ += seconds;
  while (carry_ + 1e-12 >= dt && !engine_->finished()) {
    carry_ -= dt;
    auto msgs = step();
    std::move(msgs.begin(), msgs.end(), std::back_inserter(out));
  }
  if (engine_->finished()) {
    carry_ = 0.0;
  }
  return out;
}

OutboundQueue::OutboundQueue(std::size_t capacity) : capacity_(std::max<std::size_t>(1, capacity)) {}

void OutboundQueue::push(ServerMessage m)
{
  std::lock_guard lock(mu_);
  q_.push_back(std::move(m));
  while (q_.size() > capacity_) {
    const auto it = std::find_if(q_.begin(), q_.end(), [](const ServerMessage& x) { return x.droppable(); });
    if (it == q_.end()) {
      break;
    }
    q_.erase(it);
    ++dropped_;
  }
}

std::optional<ServerMessage> OutboundQueue::pop()
{
  std::lock_guard lock(mu_);
  if (q_.empty()) {
    return std::nullopt;
  }
  ServerMessage m = std::move(q_.front());
  q_.pop_front();
  return m;
}

std::size_t OutboundQueue::size() const
{
  std::lock_guard lock(mu_);
  return q_.size();
}

std::size_t OutboundQueue::dropped() const
{
  std::lock_guard lock(mu_);
  return dropped_;
}

}  // namespace negotiation::bridge
