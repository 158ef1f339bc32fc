// Copyright 2026 The einu Authors
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

#include "einu/server/ws_server.h"

#include <deque>

#include <boost/asio/post.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "einu/common/error.h"

namespace einu::server {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(tcp::socket socket, TelemetryServer* server)
      : ws_(std::move(socket)), server_(server) {}

  void Run() {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept([self = shared_from_this()](beast::error_code ec) { self->OnAccept(ec); });
  }

  // Any thread. Queues the frame on the session's executor.
  void Send(std::shared_ptr<const std::string> frame) {
    net::post(ws_.get_executor(), [self = shared_from_this(), frame = std::move(frame)] {
      if (self->closed_) return;
      if (self->queue_.size() >= self->server_->max_queue_) {
        ++self->server_->dropped_;
        return;
      }
      self->queue_.push_back(frame);
      if (self->queue_.size() == 1) self->WriteNext();
    });
  }

  void Close() {
    net::post(ws_.get_executor(), [self = shared_from_this()] {
      if (self->closed_) return;
      self->closed_ = true;
      beast::error_code ec;
      beast::get_lowest_layer(self->ws_).socket().close(ec);
    });
  }

 private:
  void OnAccept(beast::error_code ec) {
    if (ec) return;
    server_->Register(shared_from_this());
    Read();
  }

  void Read() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
      if (ec) {
        self->closed_ = true;
        self->server_->Unregister(self.get());
        return;
      }
      self->server_->PushInbound(beast::buffers_to_string(self->buffer_.data()));
      self->buffer_.consume(self->buffer_.size());
      self->Read();
    });
  }

  void WriteNext() {
    ws_.text(true);
    ws_.async_write(net::buffer(*queue_.front()),
                    [self = shared_from_this()](beast::error_code ec, std::size_t) {
                      if (ec) {
                        self->closed_ = true;
                        self->queue_.clear();
                        self->server_->Unregister(self.get());
                        return;
                      }
                      self->queue_.pop_front();
                      if (!self->queue_.empty()) self->WriteNext();
                    });
  }

  websocket::stream<beast::tcp_stream> ws_;
  TelemetryServer* server_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> queue_;
  bool closed_ = false;
};

TelemetryServer::TelemetryServer(const std::string& host, unsigned short port,
                                 std::size_t max_queue)
    : acceptor_(io_), max_queue_(max_queue) {
  beast::error_code ec;
  const tcp::endpoint endpoint(net::ip::make_address(host, ec), port);
  if (ec) throw Error(ErrorCode::kIoError, "bad address '" + host + "': " + ec.message());
  acceptor_.open(endpoint.protocol(), ec);
  if (!ec) acceptor_.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec) acceptor_.bind(endpoint, ec);
  if (!ec) acceptor_.listen(net::socket_base::max_listen_connections, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot listen on " + host + ":" + std::to_string(port) + ": " + ec.message());
  }
  port_ = acceptor_.local_endpoint().port();
}

TelemetryServer::~TelemetryServer() { Stop(); }

void TelemetryServer::Start() {
  if (running_) return;
  running_ = true;
  Accept();
  thread_ = std::thread([this] { io_.run(); });
}

void TelemetryServer::Stop() {
  if (!running_) return;
  running_ = false;
  net::post(io_, [this] {
    beast::error_code ec;
    acceptor_.close(ec);
  });
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& s : sessions_) s->Close();
  }
  io_.stop();
  if (thread_.joinable()) thread_.join();
  std::lock_guard<std::mutex> lock(mu_);
  sessions_.clear();
}

void TelemetryServer::Accept() {
  acceptor_.async_accept(net::make_strand(io_), [this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;  // acceptor closed
    std::make_shared<Session>(std::move(socket), this)->Run();
    Accept();
  });
}

void TelemetryServer::Broadcast(const std::string& text) {
  auto frame = std::make_shared<const std::string>(text);
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& s : sessions_) s->Send(frame);
}

std::vector<std::string> TelemetryServer::DrainInbound() {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::string> out;
  out.swap(inbound_);
  return out;
}

std::size_t TelemetryServer::num_clients() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

void TelemetryServer::PushInbound(std::string text) {
  std::lock_guard<std::mutex> lock(mu_);
  inbound_.push_back(std::move(text));
}

void TelemetryServer::Register(const std::shared_ptr<Session>& s) {
  std::lock_guard<std::mutex> lock(mu_);
  sessions_.insert(s);
}

void TelemetryServer::Unregister(Session* s) {
  std::lock_guard<std::mutex> lock(mu_);
  for (auto it = sessions_.begin(); it != sessions_.end(); ++it) {
    if (it->get() == s) {
      sessions_.erase(it);
      return;
    }
  }
}

}  // namespace einu::server
