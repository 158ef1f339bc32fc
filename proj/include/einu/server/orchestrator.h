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

#ifndef EINU_SERVER_ORCHESTRATOR_H_
#define EINU_SERVER_ORCHESTRATOR_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "einu/emotion/labels.h"
#include "einu/emotion/nets.h"
#include "einu/rl/env.h"
#include "einu/rl/policy.h"
#include "einu/server/config.h"
#include "einu/server/protocol.h"

namespace einu::server {

struct OrchestratorOptions {
  sim::TerrainKind terrain = sim::TerrainKind::kFlat;
  std::uint64_t terrain_seed = 0;
  bool playground = false;
  // Initial base yaw (rad); the robot starts at the terrain's default pose.
  double initial_yaw = 0.0;
  std::shared_ptr<const emotion::AudioNet> audio_net;
  std::shared_ptr<const emotion::VideoNet> video_net;
};

// One emotion inference waiting for its arbitration partner.
struct Inference {
  emotion::Emotion emotion;
  double time = 0.0;                    // sim time of arrival
  std::optional<double> heading;        // world azimuth of the sound, audio only
};

// Owns the live simulation. Each Tick drains the inbox (every message is
// handled in isolation: a failing one emits one error event and leaves the
// world untouched), advances one control step unless paused and appends one
// state message.
class Orchestrator {
 public:
  Orchestrator(AppConfig config, rl::PolicyParams policy, OrchestratorOptions options = {});

  // Raw JSON text frames; malformed ones become error events.
  std::vector<nlohmann::json> Tick(const std::vector<std::string>& inbox);
  std::vector<nlohmann::json> TickMessages(const std::vector<ClientMessage>& inbox);

  std::uint64_t tick() const { return tick_; }
  double time() const { return env_.world().time; }
  bool paused() const { return paused_; }
  const emotion::BehaviorCommand& behavior() const { return behavior_; }
  std::optional<double> heading_target() const;
  const rl::QuadrupedEnv& env() const { return env_; }
  const std::optional<Inference>& pending_audio() const { return pending_audio_; }
  const std::optional<Inference>& pending_video() const { return pending_video_; }
  StateMessage State() const;

 private:
  void Handle(const ClientMessage& message, std::vector<nlohmann::json>& out);
  void HandleSound(const PlaceSound& m, std::vector<nlohmann::json>& out);
  void HandleVideo(const VideoFeatures& m, std::vector<nlohmann::json>& out);
  void Decide(bool from_audio, std::vector<nlohmann::json>& out);
  void SetBehavior(const emotion::BehaviorCommand& cmd);
  void Advance(std::vector<nlohmann::json>& out);

  AppConfig config_;
  rl::PolicyParams policy_;
  OrchestratorOptions options_;
  rl::QuadrupedEnv env_;
  emotion::BehaviorCommand behavior_;
  std::optional<Inference> pending_audio_;
  std::optional<Inference> pending_video_;
  sim::JointArray squat_from_{};
  double squat_start_ = 0.0;
  bool paused_ = false;
  std::uint64_t tick_ = 0;
};

// Crouch posture used by Squat.
sim::JointArray SquatAngles();

// Headless replay log: one JSON object per line, {"tick": n, "message": {...}}.
struct LogEntry {
  std::uint64_t tick = 0;
  std::string message;  // raw JSON text frame
};

std::vector<LogEntry> ReadEventLog(const std::string& text);
std::string WriteEventLog(const std::vector<LogEntry>& log);

// Feeds every entry at its tick and runs `ticks` ticks. Returns the full
// outbound stream in order.
std::vector<nlohmann::json> Replay(Orchestrator& orchestrator, const std::vector<LogEntry>& log,
                                   std::uint64_t ticks);

}  // namespace einu::server

#endif  // EINU_SERVER_ORCHESTRATOR_H_
