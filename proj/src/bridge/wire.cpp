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

#include "negotiation/bridge/wire.hpp"

#include <cmath>

#include "negotiation/harness/log_io.hpp"
#include "negotiation/intent/io.hpp"

namespace negotiation::bridge {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json goal_json(const std::optional<GoalIndex>& g) { return g ? json(goal_name(*g)) : json(nullptr); }

std::optional<GoalIndex> goal_from(const json& j)
{
  if (j.is_null()) {
    return std::nullopt;
  }
  return intent::parse_goal_name(j.get<std::string>());
}

std::array<double, 3> triple_from(const json& j)
{
  if (!j.is_array() || j.size() != 3) {
    throw WireError("bad_field", "expected a 3-element array");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json envelope(std::string_view type, const std::string& session, std::uint64_t seq)
{
  return {{"v", kWireVersion}, {"type", std::string(type)}, {"session", session}, {"seq", seq}};
}

json parse_envelope(std::string_view text)
{
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw WireError("malformed", std::string("message is not JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw WireError("malformed", "message is not a JSON object");
  }
  if (!j.contains("v") || !j["v"].is_number_integer() || j["v"].get<int>() != kWireVersion) {
    throw WireError("version", "unsupported or missing schema version");
  }
  if (!j.contains("type") || !j["type"].is_string()) {
    throw WireError("malformed", "message has no type");
  }
  if (!j.contains("seq") || !j["seq"].is_number_unsigned()) {
    throw WireError("malformed", "message has no sequence number");
  }
  if (j.contains("session") && !j["session"].is_string()) {
    throw WireError("malformed", "session id must be a string");
  }
  return j;
}

double finite_number(const json& j, const char* key)
{
  if (!j.contains(key) || !j[key].is_number()) {
    throw WireError("bad_field", std::string("missing numeric field '") + key + "'");
  }
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) {
    throw WireError("bad_field", std::string("field '") + key + "' is not finite");
  }
  return v;
}

std::optional<std::uint64_t> optional_seed(const json& j)
{
  if (!j.contains("seed") || j["seed"].is_null()) {
    return std::nullopt;
  }
  if (!j["seed"].is_number_unsigned()) {
    throw WireError("bad_field", "seed must be a non-negative integer");
  }
  return j["seed"].get<std::uint64_t>();
}

}  // namespace

std::string_view type_name(const ClientBody& b)
{
  return std::visit(Overloaded{[](const Join&) { return std::string_view("join"); },
                               [](const SetConfig&) { return std::string_view("set_config"); },
                               [](const HumanForce&) { return std::string_view("human_force"); },
                               [](const Pause&) { return std::string_view("pause"); },
                               [](const Reset&) { return std::string_view("reset"); }},
                    b);
}

std::string_view type_name(const ServerBody& b)
{
  return std::visit(Overloaded{[](const Snapshot&) { return std::string_view("snapshot"); },
                               [](const Outcome&) { return std::string_view("outcome"); },
                               [](const ErrorMessage&) { return std::string_view("error"); }},
                    b);
}

json to_json(const ClientMessage& m)
{
  json j = envelope(type_name(m.body), m.session, m.seq);
  std::visit(Overloaded{[](const Join&) {},
                        [&](const SetConfig& c) {
                          j["robot"] = c.robot;
                          j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
                          j["profile"] = c.profile;
                        },
                        [&](const HumanForce& f) {
                          j["fx"] = f.fx;
                          j["fy"] = f.fy;
                        },
                        [&](const Pause& p) { j["paused"] = p.paused; },
                        [&](const Reset& r) { j["seed"] = r.seed ? json(*r.seed) : json(nullptr); }},
             m.body);
  return j;
}

json to_json(const ServerMessage& m)
{
  json j = envelope(type_name(m.body), m.session, m.seq);
  std::visit(Overloaded{[&](const Snapshot& s) {
                          json events = json::array();
                          for (const auto& e : s.events) {
                            events.push_back(harness::to_json(e));
                          }
                          j["t"] = s.t;
                          j["pose"] = {s.pose.x, s.pose.y, s.pose.theta};
                          j["twist"] = {s.twist.vx, s.twist.vy, s.twist.wz};
                          j["f_act"] = {s.f_act.fx, s.f_act.fy, s.f_act.tau};
                          j["f_human"] = {s.f_human.fx, s.f_human.fy, s.f_human.tau};
                          j["machine"] = std::string(hlc::to_string(s.machine));
                          j["phase"] = std::string(hlc::to_string(s.phase));
                          j["active_goal"] = goal_json(s.active_goal);
                          j["intent"] = goal_json(s.intent);
                          j["posteriors"] = s.posteriors;
                          j["f_str"] = s.stretch;
                          j["events"] = events;
                          j["paused"] = s.paused;
                          j["robot"] = s.robot;
                        },
                        [&](const Outcome& o) { j["outcome"] = harness::to_json(o.outcome); },
                        [&](const ErrorMessage& e) {
                          j["code"] = e.code;
                          j["message"] = e.message;
                        }},
             m.body);
  return j;
}

std::string encode(const ClientMessage& m) { return to_json(m).dump(); }
std::string encode(const ServerMessage& m) { return to_json(m).dump(); }

ClientMessage parse_client_message(std::string_view text)
{
  const json j = parse_envelope(text);
  ClientMessage m;
  m.session = j.value("session", "");
  m.seq = j["seq"].get<std::uint64_t>();
  const std::string type = j["type"].get<std::string>();
  if (type == "join") {
    m.body = Join{};
  } else if (type == "set_config") {
    SetConfig c;
    if (j.contains("robot")) {
      if (!j["robot"].is_string()) {
        throw WireError("bad_field", "robot must be a string");
      }
      c.robot = j["robot"].get<std::string>();
    }
    c.seed = optional_seed(j);
    if (j.contains("profile") && !j["profile"].is_null()) {
      if (!j["profile"].is_object()) {
        throw WireError("bad_field", "profile must be an object");
      }
      c.profile = j["profile"];
    }
    m.body = std::move(c);
  } else if (type == "human_force") {
    m.body = HumanForce{finite_number(j, "fx"), finite_number(j, "fy")};
  } else if (type == "pause") {
    if (j.contains("paused") && !j["paused"].is_boolean()) {
      throw WireError("bad_field", "paused must be a boolean");
    }
    m.body = Pause{j.value("paused", true)};
  } else if (type == "reset") {
    m.body = Reset{optional_seed(j)};
  } else {
    throw WireError("unknown_type", "unknown client message type '" + type + "'");
  }
  return m;
}

ServerMessage parse_server_message(std::string_view text)
{
  const json j = parse_envelope(text);
  ServerMessage m;
  m.session = j.value("session", "");
  m.seq = j["seq"].get<std::uint64_t>();
  const std::string type = j["type"].get<std::string>();
  try {
    if (type == "snapshot") {
      Snapshot s;
      s.t = j.at("t").get<double>();
      const auto p = triple_from(j.at("pose"));
      s.pose = {p[0], p[1], p[2]};
      const auto v = triple_from(j.at("twist"));
      s.twist = {v[0], v[1], v[2]};
      const auto fa = triple_from(j.at("f_act"));
      s.f_act = {fa[0], fa[1], fa[2]};
      const auto fh = triple_from(j.at("f_human"));
      s.f_human = {fh[0], fh[1], fh[2]};
      const auto machine = hlc::machine_from_string(j.at("machine").get<std::string>());
      const auto phase = hlc::phase_from_string(j.at("phase").get<std::string>());
      if (!machine || !phase) {
        throw WireError("bad_field", "unknown machine or phase");
      }
      s.machine = *machine;
      s.phase = *phase;
      s.active_goal = goal_from(j.at("active_goal"));
      s.intent = goal_from(j.at("intent"));
      s.posteriors = triple_from(j.at("posteriors"));
      s.stretch = j.at("f_str").get<double>();
      for (const auto& e : j.at("events")) {
        s.events.push_back(harness::trial_event_from_json(e));
      }
      s.paused = j.at("paused").get<bool>();
      s.robot = j.at("robot").get<std::string>();
      m.body = std::move(s);
    } else if (type == "outcome") {
      m.body = Outcome{harness::trial_outcome_from_json(j.at("outcome"))};
    } else if (type == "error") {
      m.body = ErrorMessage{j.at("code").get<std::string>(), j.at("message").get<std::string>()};
    } else {
      throw WireError("unknown_type", "unknown server message type '" + type + "'");
    }
  } catch (const json::exception& e) {
    throw WireError("bad_field", e.what());
  } catch (const ParseError& e) {
    throw WireError("bad_field", e.what());
  }
  return m;
}

}  // namespace negotiation::bridge
