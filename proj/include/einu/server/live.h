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

#ifndef EINU_SERVER_LIVE_H_
#define EINU_SERVER_LIVE_H_

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "einu/server/orchestrator.h"
#include "einu/server/ws_server.h"

namespace einu::server {

struct LiveOptions {
  std::uint64_t ticks = 0;          // 0 runs until *stop is set
  bool realtime = true;             // pace ticks at the control period
  const std::atomic<bool>* stop = nullptr;
};

// Drains the server inbox into each tick and broadcasts everything the tick
// emits. Returns the inbound log (tick-stamped) for headless replay.
std::vector<LogEntry> RunLive(Orchestrator& orchestrator, TelemetryServer& server,
                              const LiveOptions& options);

}  // namespace einu::server

#endif  // EINU_SERVER_LIVE_H_
