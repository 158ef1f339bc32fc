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

#include "einu/server/orchestrator.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Geometry>

#include "einu/audio/mfcc.h"
#include "einu/common/angles.h"
#include "einu/common/error.h"
#include "einu/loc/tdoa.h"
#include "einu/server/presets.h"

namespace einu::server {

using emotion::BehaviorKind;
using emotion::Emotion;
using nlohmann::json;

namespace {

json Name(const std::optional<Emotion>& e) {
  return e ? json(std::string(emotion::EmotionName(*e))) : json();
}

json Xy(const Eigen::Vector2d& v) { return json::array({v.x(), v.y()}); }

std::shared_ptr<const sim::Terrain> MakeTerrain(sim::TerrainKind kind, std::uint64_t seed) {
  return std::make_shared<const sim::Terrain>(
      sim::GenerateTerrain(kind, seed, sim::DefaultTerrainParams(kind)));
}

rl::QuadrupedEnvConfig EnvFor(const AppConfig& config, const rl::PolicyParams& policy) {
  const rl::Task task = rl::ParseTask(policy.task);
  if (task != rl::Task::kWalk && task != rl::Task::kGallop) {
    throw Error(ErrorCode::kInvalidParams,
                "live loop needs a walk or gallop policy, got '" + policy.task + "'");
  }
  rl::QuadrupedEnvConfig env = EnvConfigFor(config, task);
  if (!policy.obs_layout.empty()) env.obs_layout = policy.obs_layout;
  if (policy.action_dim() != env.task.action_dim ||
      policy.obs_dim() != static_cast<int>(env.obs_layout.size())) {
    throw Error(ErrorCode::kDimensionMismatch, "policy shape does not match the task");
  }
  return env;
}

}  // namespace

sim::JointArray SquatAngles() {
  sim::JointArray a;
  for (int leg = 0; leg < sim::kNumLegs; ++leg) {
    a[2 * leg] = 1.1;
    a[2 * leg + 1] = -2.2;
  }
  return a;
}

Orchestrator::Orchestrator(AppConfig config, rl::PolicyParams policy, OrchestratorOptions options)
    : config_(std::move(config)),
      policy_(std::move(policy)),
      options_(std::move(options)),
      env_(EnvFor(config_, policy_)) {
  auto terrain = MakeTerrain(options_.terrain, options_.terrain_seed);
  sim::Pose pose = sim::DefaultPose(*terrain, config_.physics.robot);
  pose.rpy.z() = options_.initial_yaw;
  env_.ResetOn(std::move(terrain), pose);
}

std::optional<double> Orchestrator::heading_target() const {
  if (behavior_.kind != BehaviorKind::kLocomoteTowardSound) return std::nullopt;
  return WrapPi(env_.heading_target());
}

StateMessage Orchestrator::State() const {
  const sim::RobotState& r = env_.world().robot;
  StateMessage s;
  s.tick = tick_;
  s.time = env_.world().time;
  s.position = r.base_position;
  s.rpy = r.base_rpy;
  s.joints = r.joint_angles;
  s.behavior = std::string(emotion::BehaviorName(behavior_.kind));
  if (behavior_.emotion) s.emotion = std::string(emotion::EmotionName(*behavior_.emotion));
  s.heading_target = heading_target();
  return s;
}

std::vector<json> Orchestrator::Tick(const std::vector<std::string>& inbox) {
  std::vector<json> out;
  for (const std::string& text : inbox) {
    try {
      Handle(ParseClientMessage(std::string_view(text)), out);
    } catch (const Error& e) {
      out.push_back(EventMessage("error", {{"tick", tick_},
                                           {"code", ErrorCodeName(e.code())},
                                           {"message", e.what()}}));
    }
  }
  Advance(out);
  return out;
}

std::vector<json> Orchestrator::TickMessages(const std::vector<ClientMessage>& inbox) {
  std::vector<json> out;
  for (const ClientMessage& m : inbox) {
    try {
      Handle(m, out);
    } catch (const Error& e) {
      out.push_back(EventMessage("error", {{"tick", tick_},
                                           {"code", ErrorCodeName(e.code())},
                                           {"message", e.what()}}));
    }
  }
  Advance(out);
  return out;
}

void Orchestrator::Handle(const ClientMessage& message, std::vector<json>& out) {
  if (const auto* m = std::get_if<PlaceSound>(&message)) {
    HandleSound(*m, out);
  } else if (const auto* m = std::get_if<VideoFeatures>(&message)) {
    HandleVideo(*m, out);
  } else if (const auto* m = std::get_if<SetTerrain>(&message)) {
    auto terrain = MakeTerrain(m->kind, m->seed);
    env_.ResetOn(terrain);
    behavior_ = {};
    pending_audio_.reset();
    pending_video_.reset();
  } else if (const auto* m = std::get_if<PoseCommand>(&message)) {
    if (!options_.playground) {
      throw Error(ErrorCode::kNotPermitted, "pose commands need --playground");
    }
    sim::Pose pose;
    pose.position = m->position;
    pose.rpy = m->rpy;
    env_.ResetOn(env_.world().terrain, pose);
    behavior_ = {};
  } else if (std::holds_alternative<Pause>(message)) {
    paused_ = true;
  } else if (std::holds_alternative<Resume>(message)) {
    paused_ = false;
  }
}

void Orchestrator::HandleSound(const PlaceSound& m, std::vector<json>& out) {
  const loc::MicArray& array = config_.array;
  const ArbitrationConfig& arb = config_.arbitration;
  const sim::RobotState& robot = env_.world().robot;
  const double yaw = robot.base_rpy.z();
  const Eigen::Vector2d base = robot.base_position.head<2>();
  const Eigen::Vector2d rel = Eigen::Rotation2Dd(-yaw) * (m.position - base);
  if (rel.norm() < array.spacing) {
    throw Error(ErrorCode::kDegenerate, "sound source inside the microphone array");
  }

  const audio::SampleBuffer wave = PresetWaveform(m.waveform.value_or("click"));
  const double travel = rel.norm() / array.speed_of_sound + array.MaxDelay();
  const int n = static_cast<int>(std::ceil((travel + 0.005) * arb.capture_rate)) + 8;
  const auto streams = loc::SynthesizeStreams(rel, 0.0, array, wave.samples, wave.sample_rate,
                                              arb.capture_rate, n, arb.noise_stddev,
                                              0x5eedULL + tick_);
  const loc::ArrivalSet arrivals = loc::DetectOnsets(streams, arb.capture_rate, arb.onset_threshold);
  const loc::Bearing bearing = loc::AzimuthFromArrivals(arrivals, array);
  if (bearing.confidence == 0.0) {
    throw Error(ErrorCode::kDegenerate, "no usable time differences");
  }
  std::optional<Eigen::Vector2d> estimate;
  try {
    const loc::MultilaterationResult ml = loc::Multilaterate(arrivals, array, bearing);
    if (ml.converged) estimate = base + Eigen::Rotation2Dd(yaw) * ml.position;
  } catch (const Error&) {
    // Bearing alone still steers.
  }

  Emotion e;
  if (m.emotion) {
    e = *m.emotion;
  } else {
    if (!options_.audio_net) {
      throw Error(ErrorCode::kNoInput, "waveform event needs an audio model or an emotion hint");
    }
    const audio::MfccSequence mfcc = audio::ComputeMfcc(wave, config_.mfcc);
    e = emotion::ArgmaxEmotion(options_.audio_net->Predict(mfcc.frames));
  }

  const double heading = WrapPi(yaw + bearing.azimuth);
  out.push_back(EventMessage("localized", {{"tick", tick_},
                                           {"source", Xy(m.position)},
                                           {"azimuth", bearing.azimuth},
                                           {"confidence", bearing.confidence},
                                           {"heading_target", heading},
                                           {"estimate", estimate ? Xy(*estimate) : json()},
                                           {"emotion", Name(e)},
                                           {"hinted", m.emotion.has_value()}}));
  pending_audio_ = Inference{e, time(), heading};
  Decide(true, out);
}

void Orchestrator::HandleVideo(const VideoFeatures& m, std::vector<json>& out) {
  if (!options_.video_net) throw Error(ErrorCode::kNoInput, "no video model loaded");
  const Emotion e = emotion::ArgmaxEmotion(options_.video_net->Predict(m.features));
  pending_video_ = Inference{e, time(), std::nullopt};
  Decide(false, out);
}

void Orchestrator::Decide(bool from_audio, std::vector<json>& out) {
  const double now = time();
  const double window = config_.arbitration.window;
  std::optional<Inference> audio = pending_audio_;
  std::optional<Inference> video = pending_video_;
  // The partner only counts inside the window.
  std::optional<Inference>& partner = from_audio ? video : audio;
  if (partner && now - partner->time > window) partner.reset();

  const auto a = audio ? std::optional<Emotion>(audio->emotion) : std::nullopt;
  const auto v = video ? std::optional<Emotion>(video->emotion) : std::nullopt;
  const Emotion winner = emotion::Arbitrate(a, v);
  const bool won_by_audio = a && *a == winner;
  const std::optional<double> heading = audio ? audio->heading : std::nullopt;
  const emotion::BehaviorCommand cmd = emotion::BehaviorFor(
      winner, heading, config_.feedback_map, config_.arbitration.urgency_cutoff);
  SetBehavior(cmd);
  out.push_back(EventMessage(
      "arbitrated",
      {{"tick", tick_},
       {"audio", Name(a)},
       {"video", Name(v)},
       {"winner", Name(winner)},
       {"source", won_by_audio ? "audio" : "video"},
       {"behavior", emotion::BehaviorName(cmd.kind)},
       {"heading_target", heading_target() ? json(*heading_target()) : json()},
       {"feedback", {{"clip", cmd.feedback.sound_clip_id}, {"face", cmd.feedback.face_expression_id}}}}));
}

void Orchestrator::SetBehavior(const emotion::BehaviorCommand& cmd) {
  const BehaviorKind prev = behavior_.kind;
  behavior_ = cmd;
  if (cmd.kind == BehaviorKind::kLocomoteTowardSound) {
    env_.set_heading_target(WrapPi(*cmd.azimuth));
    if (prev != BehaviorKind::kLocomoteTowardSound) env_.RestartGait();
  } else if (cmd.kind == BehaviorKind::kSquat && prev != BehaviorKind::kSquat) {
    squat_from_ = env_.world().robot.joint_angles;
    squat_start_ = time();
  }
}

void Orchestrator::Advance(std::vector<json>& out) {
  if (!paused_) {
    const sim::SimConfig& sim = config_.physics;
    try {
      if (behavior_.kind == BehaviorKind::kLocomoteTowardSound) {
        const rl::StepResult r = env_.Step(policy_.ActionMean(env_.Observe()));
        if (r.terminated) {
          out.push_back(EventMessage("error", {{"tick", tick_},
                                               {"code", "Fall"},
                                               {"message", "fall detected; holding"}}));
          behavior_.kind = BehaviorKind::kHold;
          behavior_.azimuth.reset();
        }
      } else {
        sim::JointArray q = sim.robot.StanceAngles();
        if (behavior_.kind == BehaviorKind::kSquat) {
          const double s = std::clamp((time() - squat_start_) / config_.arbitration.squat_duration,
                                      0.0, 1.0);
          const double w = s * s * (3.0 - 2.0 * s);
          const sim::JointArray to = SquatAngles();
          for (int j = 0; j < sim::kNumJoints; ++j) q[j] = squat_from_[j] + w * (to[j] - squat_from_[j]);
        }
        const sim::JointTargets targets(q, sim.robot.limits);
        for (int k = 0; k < sim.physics_per_control; ++k) {
          sim::Step(env_.mutable_world(), targets, sim.dt, sim);
        }
      }
    } catch (const Error& e) {
      out.push_back(EventMessage("error", {{"tick", tick_},
                                           {"code", ErrorCodeName(e.code())},
                                           {"message", e.what()}}));
      behavior_ = {};
    }
  }
  out.push_back(StateToJson(State()));
  ++tick_;
}

std::vector<LogEntry> ReadEventLog(const std::string& text) {
  std::vector<LogEntry> log;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json doc = json::parse(line);
      LogEntry e;
      e.tick = doc.at("tick").get<std::uint64_t>();
      const json& m = doc.at("message");
      e.message = m.is_string() ? m.get<std::string>() : m.dump();
      log.push_back(std::move(e));
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::kMalformedFile, "event log line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  std::stable_sort(log.begin(), log.end(),
                   [](const LogEntry& a, const LogEntry& b) { return a.tick < b.tick; });
  return log;
}

std::string WriteEventLog(const std::vector<LogEntry>& log) {
  std::string out;
  for (const LogEntry& e : log) {
    json m;
    try {
      m = json::parse(e.message);
    } catch (const json::exception&) {
      m = e.message;  // kept verbatim so replay sees the same bad frame
    }
    out += json{{"tick", e.tick}, {"message", m}}.dump();
    out += '\n';
  }
  return out;
}

std::vector<json> Replay(Orchestrator& orchestrator, const std::vector<LogEntry>& log,
                         std::uint64_t ticks) {
  std::vector<json> stream;
  std::size_t next = 0;
  for (std::uint64_t t = 0; t < ticks; ++t) {
    std::vector<std::string> inbox;
    while (next < log.size() && log[next].tick <= orchestrator.tick()) {
      inbox.push_back(log[next++].message);
    }
    for (json& m : orchestrator.Tick(inbox)) stream.push_back(std::move(m));
  }
  return stream;
}

}  // namespace einu::server
