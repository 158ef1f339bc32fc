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

#ifndef EINU_SERVER_WS_SERVER_H_
#define EINU_SERVER_WS_SERVER_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>

namespace einu::server {

class Session;

// WebSocket endpoint on its own I/O thread. The simulation loop talks to it
// only through DrainInbound and Broadcast; neither blocks on the network.
// Each client has a bounded send queue; when it is full new frames for that
// client are dropped.
class TelemetryServer {
 public:
  // Port 0 picks a free port. Throws IoError if the address cannot be bound.
  TelemetryServer(const std::string& host, unsigned short port, std::size_t max_queue = 64);
  ~TelemetryServer();

  TelemetryServer(const TelemetryServer&) = delete;
  TelemetryServer& operator=(const TelemetryServer&) = delete;

  unsigned short port() const { return port_; }
  void Start();
  void Stop();

  void Broadcast(const std::string& text);
  std::vector<std::string> DrainInbound();

  std::size_t num_clients() const;
  std::uint64_t dropped_frames() const { return dropped_.load(); }

 private:
  friend class Session;
  void Accept();
  void PushInbound(std::string text);
  void Register(const std::shared_ptr<Session>& s);
  void Unregister(Session* s);

  boost::asio::io_context io_;
  boost::asio::ip::tcp::acceptor acceptor_;
  unsigned short port_ = 0;
  std::size_t max_queue_;
  std::thread thread_;
  bool running_ = false;

  mutable std::mutex mu_;
  std::vector<std::string> inbound_;
  std::set<std::shared_ptr<Session>> sessions_;
  std::atomic<std::uint64_t> dropped_{0};
};

}  // namespace einu::server

#endif  // EINU_SERVER_WS_SERVER_H_
