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

#ifndef EINU_SERVER_CONFIG_H_
#define EINU_SERVER_CONFIG_H_

#include <filesystem>

#include <json.hpp>

#include "einu/audio/mfcc.h"
#include "einu/emotion/labels.h"
#include "einu/loc/tdoa.h"
#include "einu/rl/env.h"
#include "einu/rl/ppo.h"

namespace einu::server {

struct ArbitrationConfig {
  double window = 0.5;          // s, audio and video within this are arbitrated together
  int urgency_cutoff = 4;       // ranks <= cutoff locomote toward the sound
  double capture_rate = 48000;  // Hz, simulated microphone sampling for onsets
  double onset_threshold = 0.5;
  double noise_stddev = 0.0;    // microphone noise
  double max_turn_rate = 1.0;   // yaw command units (full inner-side reversal)
  double heading_gain = 2.0;
  double squat_duration = 1.0;  // s, stance -> crouch
};

// Everything in a config file. Missing sections and keys keep defaults.
struct AppConfig {
  sim::SimConfig physics;
  rl::GaitParams gait;
  rl::PpoConfig ppo;
  audio::MfccConfig mfcc;
  loc::MicArray array;
  ArbitrationConfig arbitration;
  emotion::FeedbackMap feedback_map;
};

// Sections: physics, gait, ppo, mfcc, array, arbitration, feedback_map.
// Throws InvalidParams on unknown sections or bad values.
AppConfig AppConfigFromJson(const nlohmann::json& doc);
nlohmann::json AppConfigToJson(const AppConfig& config);
AppConfig LoadAppConfig(const std::filesystem::path& path);

// Environment config for a task with the file's physics and gait applied
// (gait overrides only apply to walk and gallop).
rl::QuadrupedEnvConfig EnvConfigFor(const AppConfig& config, rl::Task task);

}  // namespace einu::server

#endif  // EINU_SERVER_CONFIG_H_
