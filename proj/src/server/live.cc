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

#include "einu/server/live.h"

#include <chrono>
#include <thread>

namespace einu::server {

std::vector<LogEntry> RunLive(Orchestrator& orchestrator, TelemetryServer& server,
                              const LiveOptions& options) {
  using Clock = std::chrono::steady_clock;
  const sim::SimConfig& sim = orchestrator.env().config().sim;
  const auto period = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(sim.dt * sim.physics_per_control));
  std::vector<LogEntry> log;
  auto next = Clock::now();
  for (std::uint64_t n = 0; options.ticks == 0 || n < options.ticks; ++n) {
    if (options.stop && options.stop->load()) break;
    std::vector<std::string> inbox = server.DrainInbound();
    for (const std::string& m : inbox) log.push_back({orchestrator.tick(), m});
    for (const auto& message : orchestrator.Tick(inbox)) server.Broadcast(message.dump());
    if (options.realtime) {
      next += period;
      std::this_thread::sleep_until(next);
    }
  }
  return log;
}

}  // namespace einu::server
