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

#include "einu/server/config.h"

#include <fstream>
#include <set>
#include <string>

#include "einu/common/error.h"

namespace einu::server {

using nlohmann::json;

namespace {

template <typename T>
void Read(const json& doc, const char* key, T& field) {
  if (doc.contains(key)) field = doc.at(key).get<T>();
}

sim::SimConfig PhysicsFromJson(const json& d) {
  sim::SimConfig c;
  Read(d, "gravity", c.gravity);
  Read(d, "dt", c.dt);
  Read(d, "physics_per_control", c.physics_per_control);
  Read(d, "trunk_contacts", c.trunk_contacts);
  if (d.contains("contact")) {
    const json& k = d.at("contact");
    Read(k, "stiffness", c.contact.stiffness);
    Read(k, "damping", c.contact.damping);
    Read(k, "friction", c.contact.friction);
    Read(k, "tangential_damping", c.contact.tangential_damping);
  }
  if (d.contains("robot")) {
    const json& r = d.at("robot");
    Read(r, "trunk_mass", c.robot.trunk_mass);
    Read(r, "kp", c.robot.kp);
    Read(r, "kd", c.robot.kd);
    Read(r, "torque_limit", c.robot.torque_limit);
  }
  if (!(c.dt > 0.0) || c.physics_per_control < 1) {
    throw Error(ErrorCode::kInvalidParams, "physics: dt and physics_per_control must be positive");
  }
  return c;
}

json PhysicsToJson(const sim::SimConfig& c) {
  return {{"gravity", c.gravity},
          {"dt", c.dt},
          {"physics_per_control", c.physics_per_control},
          {"trunk_contacts", c.trunk_contacts},
          {"contact",
           {{"stiffness", c.contact.stiffness},
            {"damping", c.contact.damping},
            {"friction", c.contact.friction},
            {"tangential_damping", c.contact.tangential_damping}}},
          {"robot",
           {{"trunk_mass", c.robot.trunk_mass},
            {"kp", c.robot.kp},
            {"kd", c.robot.kd},
            {"torque_limit", c.robot.torque_limit}}}};
}

rl::GaitParams GaitFromJson(const json& d) {
  rl::GaitParams g;
  Read(d, "frequency", g.frequency);
  Read(d, "stride_amplitude", g.stride_amplitude);
  Read(d, "knee_lift", g.knee_lift);
  Read(d, "duty_factor", g.duty_factor);
  Read(d, "phase_offsets", g.phase_offsets);
  Read(d, "ramp_rate", g.ramp_rate);
  Read(d, "ramp_center", g.ramp_center);
  Read(d, "turn_gain", g.turn_gain);
  if (!(g.frequency > 0.0) || !(g.duty_factor > 0.0 && g.duty_factor < 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "gait: frequency > 0 and duty_factor in (0, 1)");
  }
  return g;
}

json GaitToJson(const rl::GaitParams& g) {
  return {{"frequency", g.frequency},         {"stride_amplitude", g.stride_amplitude},
          {"knee_lift", g.knee_lift},         {"duty_factor", g.duty_factor},
          {"phase_offsets", g.phase_offsets}, {"ramp_rate", g.ramp_rate},
          {"ramp_center", g.ramp_center},     {"turn_gain", g.turn_gain}};
}

ArbitrationConfig ArbitrationFromJson(const json& d) {
  ArbitrationConfig a;
  Read(d, "window", a.window);
  Read(d, "urgency_cutoff", a.urgency_cutoff);
  Read(d, "capture_rate", a.capture_rate);
  Read(d, "onset_threshold", a.onset_threshold);
  Read(d, "noise_stddev", a.noise_stddev);
  Read(d, "max_turn_rate", a.max_turn_rate);
  Read(d, "heading_gain", a.heading_gain);
  Read(d, "squat_duration", a.squat_duration);
  if (!(a.window >= 0.0) || !(a.capture_rate > 0.0) || !(a.onset_threshold > 0.0) ||
      !(a.max_turn_rate > 0.0) || !(a.squat_duration > 0.0)) {
    throw Error(ErrorCode::kInvalidParams, "arbitration: bad value");
  }
  return a;
}

json ArbitrationToJson(const ArbitrationConfig& a) {
  return {{"window", a.window},
          {"urgency_cutoff", a.urgency_cutoff},
          {"capture_rate", a.capture_rate},
          {"onset_threshold", a.onset_threshold},
          {"noise_stddev", a.noise_stddev},
          {"max_turn_rate", a.max_turn_rate},
          {"heading_gain", a.heading_gain},
          {"squat_duration", a.squat_duration}};
}

}  // namespace

AppConfig AppConfigFromJson(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kInvalidParams, "config must be a JSON object");
  static const std::set<std::string> kSections = {"physics", "gait",        "ppo",
                                                  "mfcc",    "array",       "arbitration",
                                                  "feedback_map"};
  for (const auto& [key, value] : doc.items()) {
    if (!kSections.count(key)) throw Error(ErrorCode::kInvalidParams, "unknown section '" + key + "'");
  }
  AppConfig c;
  try {
    if (doc.contains("physics")) c.physics = PhysicsFromJson(doc.at("physics"));
    if (doc.contains("gait")) c.gait = GaitFromJson(doc.at("gait"));
    if (doc.contains("ppo")) c.ppo = rl::PpoConfigFromJson(doc.at("ppo"));
    if (doc.contains("mfcc")) c.mfcc = audio::MfccConfigFromJson(doc.at("mfcc"));
    if (doc.contains("array")) c.array = loc::MicArrayFromJson(doc.at("array"));
    if (doc.contains("arbitration")) c.arbitration = ArbitrationFromJson(doc.at("arbitration"));
    if (doc.contains("feedback_map")) {
      c.feedback_map = emotion::FeedbackMap::FromJson(doc.at("feedback_map"));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidParams, std::string("config: ") + e.what());
  }
  return c;
}

json AppConfigToJson(const AppConfig& c) {
  return {{"physics", PhysicsToJson(c.physics)},
          {"gait", GaitToJson(c.gait)},
          {"ppo", rl::PpoConfigToJson(c.ppo)},
          {"mfcc", audio::MfccConfigToJson(c.mfcc)},
          {"array", loc::MicArrayToJson(c.array)},
          {"arbitration", ArbitrationToJson(c.arbitration)},
          {"feedback_map", c.feedback_map.ToJson()}};
}

AppConfig LoadAppConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidParams, path.string() + ": " + e.what());
  }
  return AppConfigFromJson(doc);
}

rl::QuadrupedEnvConfig EnvConfigFor(const AppConfig& config, rl::Task task) {
  rl::QuadrupedEnvConfig env;
  env.sim = config.physics;
  env.task = rl::MakeTaskSpec(task, env.sim.robot);
  if (task == rl::Task::kWalk) {
    env.task.gait = config.gait;
  } else if (task == rl::Task::kGallop) {
    // Gallop keeps its own footfall pattern; only shared rates carry over.
    env.task.gait.frequency = config.gait.frequency;
    env.task.gait.turn_gain = config.gait.turn_gain;
  }
  env.heading_gain = config.arbitration.heading_gain;
  env.max_turn_rate = config.arbitration.max_turn_rate;
  return env;
}

}  // namespace einu::server
