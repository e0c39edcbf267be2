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

#include "negotiation/bridge/server.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <vector>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/version.hpp>
#include <boost/beast/websocket.hpp>
#include <nlohmann/json.hpp>

namespace negotiation::bridge {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

class WsConnection : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket socket, Server::Impl& server, std::string id);
  ~WsConnection() { shutdown(); }

  void run(http::request<http::string_body> req);
  void shutdown();
  bool done() const { return done_; }

 private:
  void read();
  void flush();
  void simulate();
  void close();

  websocket::stream<beast::tcp_stream> ws_;
  Server::Impl& server_;
  std::string id_;
  beast::flat_buffer buffer_;

  std::mutex in_mu_;
  std::deque<std::string> inbound_;
  OutboundQueue outbound_;
  std::string writing_;
  bool write_pending_{false};

  std::atomic<bool> running_{false};
  std::atomic<bool> done_{false};
  bool counted_{false};
  std::thread sim_;
};

}  // namespace

struct Server::Impl {
  Impl(ServerOptions o, ModelProvider m) : options(std::move(o)), models(std::move(m)), acceptor(ioc) {}

  void accept();
  void start_session(tcp::socket socket, http::request<http::string_body> req);
  void prune();

  ServerOptions options;
  ModelProvider models;
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::thread io_thread;
  std::atomic<std::size_t> sessions{0};
  std::uint64_t next_id{1};

  std::mutex mu;
  std::condition_variable cv;
  bool stopped{false};
  std::vector<std::shared_ptr<WsConnection>> connections;
};

namespace {

std::string health_body(const Server::Impl& server)
{
  return nlohmann::json{{"status", "ok"},
                        {"name", "negotiation_sim"},
                        {"version", kServerVersion},
                        {"wire_version", kWireVersion},
                        {"sessions", server.sessions.load()}}
      .dump();
}

/// Reads one HTTP request, then either upgrades it to a websocket session or
/// answers it as plain HTTP and closes.
class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket socket, Server::Impl& server) : stream_(std::move(socket)), server_(server) {}

  void run()
  {
    stream_.expires_after(std::chrono::seconds(10));
    http::async_read(stream_, buffer_, req_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) { self->on_read(ec); });
  }

 private:
  void on_read(beast::error_code ec)
  {
    if (ec) {
      return;
    }
    if (websocket::is_upgrade(req_)) {
      stream_.expires_never();
      server_.start_session(stream_.release_socket(), std::move(req_));
      return;
    }
    auto res = std::make_shared<http::response<http::string_body>>();
    res->version(req_.version());
    res->set(http::field::server, std::string("negotiation_sim/") + kServerVersion);
    res->keep_alive(false);
    if (req_.method() == http::verb::get && req_.target() == "/health") {
      res->result(http::status::ok);
      res->set(http::field::content_type, "application/json");
      res->body() = health_body(server_);
    } else {
      res->result(http::status::not_found);
      res->set(http::field::content_type, "text/plain");
      res->body() = "not found\n";
    }
    res->prepare_payload();
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code, std::size_t) {
      beast::error_code ignored;
      self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
    });
  }

  beast::tcp_stream stream_;
  Server::Impl& server_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

WsConnection::WsConnection(tcp::socket socket, Server::Impl& server, std::string id)
  : ws_(std::move(socket)), server_(server), id_(std::move(id)), outbound_(server.options.queue_capacity)
{
}

void WsConnection::run(http::request<http::string_body> req)
{
  ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
  ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
    if (ec) {
      self->done_ = true;
      return;
    }
    ++self->server_.sessions;
    self->counted_ = true;
    self->running_ = true;
    self->sim_ = std::thread([self] { self->simulate(); });
    self->read();
  });
}

void WsConnection::read()
{
  ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
    if (ec) {
      self->close();
      return;
    }
    {
      std::lock_guard lock(self->in_mu_);
      self->inbound_.push_back(beast::buffers_to_string(self->buffer_.data()));
    }
    self->buffer_.consume(self->buffer_.size());
    self->read();
  });
}

void WsConnection::flush()
{
  if (write_pending_ || !running_) {
    return;
  }
  auto next = outbound_.pop();
  if (!next) {
    return;
  }
  writing_ = encode(*next);
  write_pending_ = true;
  ws_.text(true);
  ws_.async_write(net::buffer(writing_), [self = shared_from_this()](beast::error_code ec, std::size_t) {
    self->write_pending_ = false;
    if (ec) {
      self->close();
      return;
    }
    self->flush();
  });
}

void WsConnection::close()
{
  if (running_.exchange(false) && counted_) {
    --server_.sessions;
  }
  done_ = true;
}

void WsConnection::simulate()
{
  const auto& o = server_.options;
  Session session(id_, o.profile, server_.models, o.limits);
  const auto period = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(o.tick_period));
  auto next = std::chrono::steady_clock::now();
  while (running_) {
    std::deque<std::string> inbox;
    {
      std::lock_guard lock(in_mu_);
      inbox.swap(inbound_);
    }
    bool any = false;
    for (const auto& text : inbox) {
      auto replies = session.handle_text(text);
      for (auto& r : replies) {
        outbound_.push(std::move(r));
        any = true;
      }
    }
    for (auto& m : session.advance(o.tick_period * o.speed)) {
      outbound_.push(std::move(m));
      any = true;
    }
    if (any) {
      net::post(ws_.get_executor(), [self = shared_from_this()] { self->flush(); });
    }
    next += period;
    std::this_thread::sleep_until(next);
  }
}

void WsConnection::shutdown()
{
  running_ = false;
  if (sim_.joinable() && sim_.get_id() != std::this_thread::get_id()) {
    sim_.join();
  } else if (sim_.joinable()) {
    sim_.detach();
  }
}

}  // namespace

void Server::Impl::accept()
{
  acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
    if (ec) {
      return;
    }
    std::make_shared<HttpConnection>(std::move(socket), *this)->run();
    prune();
    accept();
  });
}

void Server::Impl::start_session(tcp::socket socket, http::request<http::string_body> req)
{
  std::shared_ptr<WsConnection> conn;
  {
    std::lock_guard lock(mu);
    if (stopped) {
      return;
    }
    conn = std::make_shared<WsConnection>(std::move(socket), *this, "s" + std::to_string(next_id++));
    connections.push_back(conn);
  }
  conn->run(std::move(req));
}

void Server::Impl::prune()
{
  std::lock_guard lock(mu);
  std::erase_if(connections, [](const auto& c) {
    if (c->done()) {
      c->shutdown();
      return true;
    }
    return false;
  });
}

Server::Server(ServerOptions options, ModelProvider models)
  : impl_(std::make_unique<Impl>(std::move(options), std::move(models)))
{
  const auto& o = impl_->options;
  if (o.speed <= 0.0 || o.tick_period <= 0.0) {
    throw ConfigError("server speed and tick period must be positive");
  }
  o.profile.validate();
}

Server::~Server() { stop(); }

void Server::start()
{
  auto& i = *impl_;
  const tcp::endpoint ep(net::ip::make_address(i.options.address), i.options.port);
  i.acceptor.open(ep.protocol());
  i.acceptor.set_option(net::socket_base::reuse_address(true));
  i.acceptor.bind(ep);
  i.acceptor.listen(net::socket_base::max_listen_connections);
  i.accept();
  i.io_thread = std::thread([&i] { i.ioc.run(); });
}

void Server::wait()
{
  std::unique_lock lock(impl_->mu);
  impl_->cv.wait(lock, [this] { return impl_->stopped; });
}

void Server::stop()
{
  auto& i = *impl_;
  {
    std::lock_guard lock(i.mu);
    if (i.stopped) {
      return;
    }
    i.stopped = true;
  }
  i.cv.notify_all();
  net::post(i.ioc, [&i] {
    beast::error_code ignored;
    i.acceptor.close(ignored);
  });
  std::vector<std::shared_ptr<WsConnection>> conns;
  {
    std::lock_guard lock(i.mu);
    conns.swap(i.connections);
  }
  for (auto& c : conns) {
    c->shutdown();
  }
  i.ioc.stop();
  if (i.io_thread.joinable()) {
    i.io_thread.join();
  }
}

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

std::size_t Server::active_sessions() const { return impl_->sessions.load(); }

}  // namespace negotiation::bridge
