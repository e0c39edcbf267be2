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
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "negotiation/bridge/wire.hpp"
#include "negotiation/harness/profile.hpp"
#include "negotiation/harness/trial.hpp"

namespace negotiation::bridge {

struct SessionLimits {
  double force_cap{35.0};  // N, live wrench norm cap
  double stale_after{0.2};  // s of simulated time before live input decays to zero
  double snapshot_hz{30.0};
};

/// Latest wrench received from the client, stamped with the simulated time
/// of receipt.
struct LiveInput {
  PlanarWrench wrench;
  std::optional<double> received_at;
};

/// Partner wrench taken from the client. Stale or missing input is zero.
class LiveHuman : public harness::HumanSource {
 public:
  LiveHuman(std::shared_ptr<const LiveInput> input, double stale_after);

  PlanarWrench step(double t, const human::HumanInputs& in, double dt) override;
  double grasp_time() const override { return 0.0; }

 private:
  std::shared_ptr<const LiveInput> input_;
  double stale_after_;
};

using ModelProvider = std::function<std::shared_ptr<const intent::LdaModel>(const harness::Profile&)>;

/// One live negotiation. Not thread-safe: a single owner feeds it client
/// messages and advances it.
class Session {
 public:
  Session(std::string id, harness::Profile base, ModelProvider models, SessionLimits limits = {});

  const std::string& id() const { return id_; }

  /// Applies one client message. Returns the immediate replies: a snapshot
  /// after Join, SetConfig and Reset, an Error for anything rejected.
  std::vector<ServerMessage> handle(const ClientMessage& m);
  /// As handle, for raw text. Malformed input yields an Error; the session
  /// carries on.
  std::vector<ServerMessage> handle_text(std::string_view text);

  /// Advances the simulation by `seconds` of simulated time (whole control
  /// ticks; the remainder carries over). Emits snapshots at the snapshot
  /// rate and the Outcome once. Idle until the client has joined or sent a
  /// configuration.
  std::vector<ServerMessage> advance(double seconds);

  /// Runs exactly one control tick.
  std::vector<ServerMessage> step();

  bool joined() const { return joined_; }
  bool paused() const { return paused_; }
  bool finished() const { return engine_->finished(); }
  double time() const { return engine_->time(); }
  const harness::TrialConfig& config() const { return config_; }
  const harness::TrialEngine& engine() const { return *engine_; }
  const LiveInput& live_input() const { return *input_; }
  Snapshot snapshot() const;

 private:
  void restart(harness::TrialConfig config);
  ServerMessage message(ServerBody body);
  ServerMessage error(const std::string& code, const std::string& what);

  std::string id_;
  harness::Profile base_;
  ModelProvider models_;
  SessionLimits limits_;

  harness::TrialConfig config_;
  std::shared_ptr<LiveInput> input_;
  std::unique_ptr<harness::TrialEngine> engine_;
  bool joined_{false};
  bool paused_{false};
  bool outcome_sent_{false};
  double carry_{0.0};  // s not yet simulated
  std::uint64_t next_snapshot_tick_{0};
  std::vector<harness::TrialEvent> pending_events_;
  std::uint64_t seq_{0};  // last server sequence number
  std::optional<std::uint64_t> client_seq_;  // last accepted client sequence number
};

/// Bounded outbound queue. On overflow the oldest droppable message goes
/// first; non-droppable messages are never discarded. Thread-safe.
class OutboundQueue {
 public:
  explicit OutboundQueue(std::size_t capacity);

  void push(ServerMessage m);
  std::optional<ServerMessage> pop();
  std::size_t size() const;
  std::size_t dropped() const;

 private:
  mutable std::mutex mu_;
  std::deque<ServerMessage> q_;
  std::size_t capacity_;
  std::size_t dropped_{0};
};

}  // namespace negotiation::bridge
