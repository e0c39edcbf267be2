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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "negotiation/core/errors.hpp"
#include "negotiation/harness/trial.hpp"

/// JSON messages exchanged with a live client, one per websocket text frame.
/// Every message carries "v" (schema version), "type", "session" and "seq".
namespace negotiation::bridge {

inline constexpr int kWireVersion = 1;

/// Malformed or out-of-order client input. The code is sent back to the
/// client in an Error message.
class WireError : public Error {
 public:
  WireError(std::string code, const std::string& what) : Error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Client to server.

struct Join {};

struct SetConfig {
  std::string robot{"follower"};  // "hard:g1", "soft:g2", "kcg:g3" or "follower"
  std::optional<std::uint64_t> seed;
  nlohmann::json profile;  // partial overrides of the server profile, may be null
};

struct HumanForce {
  double fx{0.0};  // N
  double fy{0.0};  // N
};

struct Pause {
  bool paused{true};
};

struct Reset {
  std::optional<std::uint64_t> seed;  // default: previous seed + 1
};

using ClientBody = std::variant<Join, SetConfig, HumanForce, Pause, Reset>;

struct ClientMessage {
  std::string session;
  std::uint64_t seq{0};
  ClientBody body;
};

// Server to client.

/// Complete render state; clients never need an earlier snapshot.
struct Snapshot {
  double t{0.0};
  PlanarPose pose;
  PlanarTwist twist;
  PlanarWrench f_act;
  PlanarWrench f_human;  // filtered, as the robot senses it
  hlc::Machine machine{hlc::Machine::Follower};
  hlc::Phase phase{hlc::Phase::Perceiving};
  std::optional<GoalIndex> active_goal;
  std::optional<GoalIndex> intent;
  std::array<double, 3> posteriors{};
  double stretch{0.0};  // N
  std::vector<harness::TrialEvent> events;  // raised since the previous snapshot
  bool paused{false};
  std::string robot;  // robot assignment
};

struct Outcome {
  harness::TrialOutcome outcome;
};

struct ErrorMessage {
  std::string code;
  std::string message;
};

using ServerBody = std::variant<Snapshot, Outcome, ErrorMessage>;

struct ServerMessage {
  std::string session;
  std::uint64_t seq{0};
  ServerBody body;

  /// Snapshots may be dropped under back-pressure; nothing else may.
  bool droppable() const { return std::holds_alternative<Snapshot>(body); }
};

std::string_view type_name(const ClientBody& b);
std::string_view type_name(const ServerBody& b);

nlohmann::json to_json(const ClientMessage& m);
nlohmann::json to_json(const ServerMessage& m);
std::string encode(const ClientMessage& m);
std::string encode(const ServerMessage& m);

/// Throws WireError.
ClientMessage parse_client_message(std::string_view text);
ServerMessage parse_server_message(std::string_view text);

}  // namespace negotiation::bridge
