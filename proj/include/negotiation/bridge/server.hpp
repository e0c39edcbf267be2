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

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>

#include "negotiation/bridge/session.hpp"
#include "negotiation/harness/profile.hpp"

namespace negotiation::bridge {

inline constexpr const char* kServerVersion = "0.1.0";

struct ServerOptions {
  std::string address{"127.0.0.1"};
  std::uint16_t port{8080};  // 0 picks a free port
  double speed{1.0};  // simulated seconds per wall-clock second
  double tick_period{0.005};  // s of wall clock between simulation slices
  std::size_t queue_capacity{64};  // outbound messages per connection
  SessionLimits limits;
  harness::Profile profile = harness::Profile::defaults();
};

/// Websocket endpoint for live sessions plus GET /health over plain HTTP,
/// both on one port. Each websocket connection owns one session, simulated
/// on its own thread; network I/O and simulation exchange messages through
/// queues only.
class Server {
 public:
  Server(ServerOptions options, ModelProvider models);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts serving on a background thread.
  void start();
  /// Blocks until stop() is called from another thread or a signal handler.
  void wait();
  void stop();

  std::uint16_t port() const;
  std::size_t active_sessions() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace negotiation::bridge
