// Copyright 2026 The Walk Companion Authors
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

#include "companion/bridge/server.hpp"

#include <chrono>
#include <csignal>
#include <deque>
#include <map>
#include <stdexcept>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <spdlog/spdlog.h>

namespace companion::bridge {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

namespace {

constexpr std::size_t kMaxQueuedFrames = 256;

}  // namespace

struct Server::Impl {
  class Connection : public std::enable_shared_from_this<Connection> {
   public:
    Connection(Impl& owner, tcp::socket socket, ClientId id)
        : owner_(owner), ws_(std::move(socket)), id_(id) {}

    ClientId id() const { return id_; }

    void start() {
      ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
      ws_.text(true);
      ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
        if (ec) {
          spdlog::debug("client {} handshake failed: {}", self->id_, ec.message());
          return;
        }
        self->open_ = true;
        self->owner_.on_open(self);
        self->read();
      });
    }

    void send(std::string frame) {
      if (!open_) return;
      if (queue_.size() >= kMaxQueuedFrames) {
        spdlog::warn("client {} is not keeping up; dropping a frame", id_);
        return;
      }
      queue_.push_back(std::move(frame));
      if (queue_.size() == 1) write();
    }

    void close() {
      if (!open_) return;
      open_ = false;
      beast::error_code ec;
      beast::get_lowest_layer(ws_).socket().shutdown(tcp::socket::shutdown_both, ec);
      beast::get_lowest_layer(ws_).close();
    }

   private:
    void read() {
      ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec,
                                                          std::size_t) {
        if (ec) {
          self->finish(ec);
          return;
        }
        const std::string text = beast::buffers_to_string(self->buffer_.data());
        self->buffer_.consume(self->buffer_.size());
        for (auto& reply : self->owner_.session.receive(self->id_, text)) {
          self->send(std::move(reply));
        }
        self->read();
      });
    }

    void write() {
      ws_.async_write(net::buffer(queue_.front()),
                      [self = shared_from_this()](beast::error_code ec, std::size_t) {
                        if (ec) {
                          self->finish(ec);
                          return;
                        }
                        self->queue_.pop_front();
                        if (!self->queue_.empty()) self->write();
                      });
    }

    void finish(beast::error_code ec) {
      if (!open_ && closed_reported_) return;
      open_ = false;
      queue_.clear();
      if (closed_reported_) return;
      closed_reported_ = true;
      if (ec != websocket::error::closed && ec != net::error::operation_aborted) {
        spdlog::debug("client {}: {}", id_, ec.message());
      }
      owner_.on_close(id_);
    }

    Impl& owner_;
    websocket::stream<beast::tcp_stream> ws_;
    ClientId id_;
    beast::flat_buffer buffer_;
    std::deque<std::string> queue_;
    bool open_ = false;
    bool closed_reported_ = false;
  };

  Impl(Session& s, const Options& options)
      : session(s), acceptor(io), timer(io), signals(io) {
    if (options.stop_on_signals) {
      signals.add(SIGINT);
      signals.add(SIGTERM);
      signals.async_wait([this](beast::error_code ec, int signal) {
        if (ec) return;
        spdlog::info("signal {} received, shutting down", signal);
        shutdown();
      });
    }
    beast::error_code ec;
    const auto address = net::ip::make_address(options.address, ec);
    if (ec) throw std::runtime_error("invalid address '" + options.address + "'");
    const tcp::endpoint endpoint(address, options.port);
    acceptor.open(endpoint.protocol(), ec);
    if (!ec) acceptor.set_option(net::socket_base::reuse_address(true), ec);
    if (!ec) acceptor.bind(endpoint, ec);
    if (!ec) acceptor.listen(net::socket_base::max_listen_connections, ec);
    if (ec) {
      throw std::runtime_error("cannot listen on " + options.address + ":" +
                               std::to_string(options.port) + ": " + ec.message());
    }
  }

  void accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) {
        if (ec != net::error::operation_aborted) spdlog::warn("accept: {}", ec.message());
        if (!acceptor.is_open()) return;
      } else {
        const ClientId id = next_id++;
        auto c = std::make_shared<Connection>(*this, std::move(socket), id);
        connections.emplace(id, c);
        c->start();
      }
      accept();
    });
  }

  void on_open(const std::shared_ptr<Connection>& c) {
    const Role role = session.connect(c->id());
    spdlog::info("client {} connected as {}", c->id(),
                 role == Role::Controller ? "controller" : "observer");
    c->send(hello_frame(role));
  }

  void on_close(ClientId id) {
    connections.erase(id);
    const auto promoted = session.disconnect(id);
    spdlog::info("client {} disconnected", id);
    if (promoted) {
      if (const auto it = connections.find(*promoted); it != connections.end()) {
        spdlog::info("client {} promoted to controller", *promoted);
        it->second->send(hello_frame(Role::Controller));
      }
    }
  }

  void schedule_tick() {
    deadline += std::chrono::milliseconds(20);
    const auto now = std::chrono::steady_clock::now();
    // After a long stall, resume from now instead of bursting to catch up.
    if (now - deadline > std::chrono::seconds(1)) deadline = now;
    timer.expires_at(deadline);
    timer.async_wait([this](beast::error_code ec) {
      if (ec) return;
      if (const auto telemetry = session.tick()) {
        const std::string frame = state_frame(*telemetry);
        for (auto& [id, c] : connections) c->send(frame);
      }
      schedule_tick();
    });
  }

  void shutdown() {
    beast::error_code ec;
    acceptor.close(ec);
    timer.cancel();
    signals.cancel(ec);
    auto live = connections;
    for (auto& [id, c] : live) c->close();
    io.stop();
  }

  net::io_context io;
  Session& session;
  tcp::acceptor acceptor;
  net::steady_timer timer;
  net::signal_set signals;
  std::chrono::steady_clock::time_point deadline;
  std::map<ClientId, std::shared_ptr<Connection>> connections;
  ClientId next_id = 1;
};

Server::Server(Session& session, const Options& options)
    : impl_(std::make_unique<Impl>(session, options)) {}

Server::~Server() = default;

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() {
  impl_->accept();
  impl_->deadline = std::chrono::steady_clock::now();
  impl_->schedule_tick();
  impl_->io.run();
}

void Server::stop() {
  net::post(impl_->io, [impl = impl_.get()] { impl->shutdown(); });
}

}  // namespace companion::bridge
