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

// einu: train policies and emotion nets, run the live server, replay logs,
// and inspect the audio pipeline from the command line.

#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "einu/audio/mfcc.h"
#include "einu/audio/wav.h"
#include "einu/common/angles.h"
#include "einu/common/error.h"
#include "einu/emotion/nets.h"
#include "einu/loc/tdoa.h"
#include "einu/rl/evaluate.h"
#include "einu/rl/train.h"
#include "einu/server/checkpoint.h"
#include "einu/server/config.h"
#include "einu/server/live.h"
#include "einu/server/orchestrator.h"
#include "einu/server/presets.h"
#include "einu/server/ws_server.h"

namespace {

using nlohmann::json;
using namespace einu;

std::atomic<bool> g_stop{false};

void OnSignal(int) { g_stop = true; }

server::AppConfig ConfigOrDefault(const std::string& path) {
  return path.empty() ? server::AppConfig{} : server::LoadAppConfig(path);
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
}

Eigen::Vector2d ParseXy(const std::string& text) {
  double x, y;
  char comma;
  std::istringstream in(text);
  if (!(in >> x >> comma >> y) || comma != ',' || !in.eof()) {
    throw Error(ErrorCode::kInvalidParams, "expected x,y but got '" + text + "'");
  }
  return {x, y};
}

std::pair<std::string, unsigned short> ParseHostPort(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::kInvalidParams, "expected HOST:PORT but got '" + text + "'");
  }
  const int port = std::stoi(text.substr(colon + 1));
  if (port < 0 || port > 65535) throw Error(ErrorCode::kInvalidParams, "port out of range");
  return {text.substr(0, colon), static_cast<unsigned short>(port)};
}

struct NetPaths {
  std::string audio;
  std::string video;
};

server::OrchestratorOptions MakeOptions(const std::string& terrain, std::uint64_t seed,
                                        bool playground, const NetPaths& nets) {
  server::OrchestratorOptions o;
  o.terrain = sim::ParseTerrainKind(terrain);
  o.terrain_seed = seed;
  o.playground = playground;
  if (!nets.audio.empty()) {
    o.audio_net = std::make_shared<emotion::AudioNet>(
        server::DecodeAudioNet(server::ReadFileBytes(nets.audio)));
  }
  if (!nets.video.empty()) {
    o.video_net = std::make_shared<emotion::VideoNet>(
        server::DecodeVideoNet(server::ReadFileBytes(nets.video)));
  }
  return o;
}

int Train(const std::string& task_name, const std::string& config_path, std::uint64_t seed,
          const std::string& out, int iterations) {
  server::AppConfig config = ConfigOrDefault(config_path);
  if (iterations > 0) config.ppo.iterations = iterations;
  const rl::Task task = rl::ParseTask(task_name);
  rl::TrainHooks hooks;
  hooks.on_iteration = [](const rl::IterationMetrics& m, const rl::PolicyParams&) {
    std::cout << rl::MetricsToJson(m).dump() << std::endl;
    return !g_stop.load();
  };
  const rl::TrainResult result =
      rl::TrainTask(server::EnvConfigFor(config, task), config.ppo, seed, hooks);
  server::SavePolicyCheckpoint(result.params, out);
  std::cerr << "wrote " << out << "\n";
  return 0;
}

int Evaluate(const std::string& policy_path, const std::string& config_path,
             const std::vector<std::string>& terrains, std::uint64_t seed, double seconds) {
  const server::AppConfig config = ConfigOrDefault(config_path);
  const rl::PolicyParams policy = server::LoadPolicyCheckpoint(policy_path);
  const rl::QuadrupedEnvConfig env = server::EnvConfigFor(config, rl::ParseTask(policy.task));
  for (const std::string& t : terrains) {
    const rl::LocomotionTrial trial =
        rl::EvaluateLocomotion(env, policy, sim::ParseTerrainKind(t), seed, seconds);
    std::cout << rl::LocomotionTrialToJson(trial).dump() << std::endl;
  }
  return 0;
}

int TrainEmotion(const std::string& modality, const std::string& train_config,
                 const std::string& out, int per_class, std::uint64_t seed) {
  emotion::EmotionTrainConfig tc;
  tc.seed = seed;
  if (!train_config.empty()) tc = emotion::EmotionTrainConfigFromJson(json::parse(ReadText(train_config)));
  const emotion::EpochHook hook = [](int epoch, double loss, double accuracy) {
    std::cout << json{{"epoch", epoch}, {"loss", loss}, {"accuracy", accuracy}}.dump()
              << std::endl;
  };
  if (modality == "audio") {
    // Voice presets stand in for a labeled corpus.
    emotion::AudioNet net;
    net.Initialize(seed);
    emotion::TrainAudioNet(net, server::PresetAudioDataset(per_class, 1), tc, hook);
    server::WriteFileBytes(out, server::EncodeAudioNet(net));
  } else if (modality == "video") {
    const emotion::SyntheticVideoFeatures features(emotion::VideoNetShape{}.features, 3.0, 1.0,
                                                   seed);
    emotion::VideoNet net;
    net.Initialize(seed);
    emotion::TrainVideoNet(net, features.Dataset(per_class, seed + 1), tc, hook);
    server::WriteFileBytes(out, server::EncodeVideoNet(net));
  } else {
    throw Error(ErrorCode::kInvalidParams, "modality must be audio or video");
  }
  std::cerr << "wrote " << out << "\n";
  return 0;
}

int Run(const std::string& terrain, std::uint64_t terrain_seed, const std::string& policy_path,
        const std::string& config_path, const std::string& serve, bool playground,
        const NetPaths& nets, const std::string& record, std::uint64_t ticks) {
  const server::AppConfig config = ConfigOrDefault(config_path);
  server::Orchestrator orchestrator(config, server::LoadPolicyCheckpoint(policy_path),
                                    MakeOptions(terrain, terrain_seed, playground, nets));
  const auto [host, port] = ParseHostPort(serve);
  server::TelemetryServer ws(host, port);
  ws.Start();
  std::cerr << "serving ws://" << host << ":" << ws.port() << "/\n";
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  server::LiveOptions live;
  live.ticks = ticks;
  live.stop = &g_stop;
  const std::vector<server::LogEntry> log = server::RunLive(orchestrator, ws, live);
  ws.Stop();
  if (!record.empty()) WriteText(record, server::WriteEventLog(log));
  std::cerr << "ran " << orchestrator.tick() << " ticks, dropped " << ws.dropped_frames()
            << " frames\n";
  return 0;
}

int Replay(const std::string& terrain, std::uint64_t terrain_seed, const std::string& policy_path,
           const std::string& config_path, bool playground, const NetPaths& nets,
           const std::string& log_path, std::uint64_t ticks) {
  const server::AppConfig config = ConfigOrDefault(config_path);
  server::Orchestrator orchestrator(config, server::LoadPolicyCheckpoint(policy_path),
                                    MakeOptions(terrain, terrain_seed, playground, nets));
  const auto log = server::ReadEventLog(ReadText(log_path));
  for (const json& m : server::Replay(orchestrator, log, ticks)) std::cout << m.dump() << "\n";
  return 0;
}

int Mfcc(const std::string& path, const std::string& config_path) {
  const server::AppConfig config = ConfigOrDefault(config_path);
  audio::SampleBuffer b = audio::ReadWavFile(path);
  if (b.sample_rate != config.mfcc.sample_rate) b = audio::Resample(b, config.mfcc.sample_rate);
  std::cout << audio::MfccToJson(audio::ComputeMfcc(b, config.mfcc)).dump() << "\n";
  return 0;
}

int Localize(const std::string& source_text, double noise, std::uint64_t seed,
             const std::string& config_path) {
  const server::AppConfig config = ConfigOrDefault(config_path);
  const loc::MicArray& array = config.array;
  const Eigen::Vector2d source = ParseXy(source_text);
  loc::ArrivalSet arrivals;
  if (noise > 0.0) {
    // Sampled capture of a click with microphone noise, onsets by threshold.
    const audio::SampleBuffer click = server::PresetWaveform("click");
    const double rate = config.arbitration.capture_rate;
    const int n = static_cast<int>((source.norm() / array.speed_of_sound + array.MaxDelay() + 0.01) * rate);
    const auto streams = loc::SynthesizeStreams(source, 0.0, array, click.samples,
                                                click.sample_rate, rate, n, noise, seed);
    arrivals = loc::DetectOnsets(streams, rate, config.arbitration.onset_threshold);
  } else {
    arrivals = loc::SimulateArrivals(source, 0.0, array);
  }
  const loc::Bearing bearing = loc::AzimuthFromArrivals(arrivals, array);
  json estimate;
  try {
    const loc::MultilaterationResult ml = loc::Multilaterate(arrivals, array, bearing);
    if (ml.converged) estimate = json::array({ml.position.x(), ml.position.y()});
  } catch (const Error&) {
  }
  std::cout << json{{"arrivals", arrivals.times},
                    {"azimuth_deg", bearing.azimuth * 180.0 / kPi},
                    {"confidence", bearing.confidence},
                    {"position_estimate", estimate}}
                   .dump()
            << "\n";
  return 0;
}

int Preset(const std::string& name, std::uint64_t variant, const std::string& out) {
  audio::WriteWavFile(out, server::PresetWaveform(name, variant));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"einu: emotion-driven quadruped simulator"};
  app.require_subcommand(1);

  std::string task = "walk", config_path, out, policy, terrain = "flat", serve = "127.0.0.1:8080";
  std::string record, log_path, wav, source, modality = "audio", train_config, preset_name;
  std::vector<std::string> terrains{"flat", "uneven", "hilly", "maze"};
  std::uint64_t seed = 0, terrain_seed = 0, ticks = 0, variant = 0;
  int iterations = 0, per_class = 40;
  double noise = 0.0, seconds = 10.0;
  bool playground = false;
  NetPaths nets;

  const auto add_nets = [&](CLI::App* cmd) {
    cmd->add_option("--audio-net", nets.audio, "audio emotion checkpoint");
    cmd->add_option("--video-net", nets.video, "video emotion checkpoint");
  };

  CLI::App* train = app.add_subcommand("train", "train a hybrid locomotion policy with PPO");
  train->add_option("--task", task)->check(CLI::IsMember({"walk", "gallop", "standup", "pose"}));
  train->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  train->add_option("--seed", seed);
  train->add_option("--out", out, "checkpoint path")->required();
  train->add_option("--iterations", iterations, "override ppo.iterations");

  CLI::App* eval = app.add_subcommand("eval", "measure locomotion of a policy on terrains");
  eval->add_option("--policy", policy)->required()->check(CLI::ExistingFile);
  eval->add_option("--config", config_path)->check(CLI::ExistingFile);
  eval->add_option("--terrain", terrains);
  eval->add_option("--seed", seed, "terrain seed");
  eval->add_option("--seconds", seconds);

  CLI::App* temo = app.add_subcommand("train-emotion", "train an emotion net on synthetic data");
  temo->add_option("--modality", modality)->check(CLI::IsMember({"audio", "video"}));
  temo->add_option("--train-config", train_config, "EmotionTrainConfig JSON")
      ->check(CLI::ExistingFile);
  temo->add_option("--per-class", per_class);
  temo->add_option("--seed", seed);
  temo->add_option("--out", out)->required();

  CLI::App* run = app.add_subcommand("run", "run the live simulation and WebSocket server");
  run->add_option("--terrain", terrain)->check(CLI::IsMember({"flat", "uneven", "hilly", "maze"}));
  run->add_option("--terrain-seed", terrain_seed);
  run->add_option("--policy", policy)->required()->check(CLI::ExistingFile);
  run->add_option("--config", config_path)->check(CLI::ExistingFile);
  run->add_option("--serve", serve, "HOST:PORT");
  run->add_flag("--playground", playground, "allow direct pose commands");
  run->add_option("--record", record, "write the inbound event log here on exit");
  run->add_option("--ticks", ticks, "stop after this many ticks (0 = until interrupted)");
  add_nets(run);

  CLI::App* replay = app.add_subcommand("replay", "replay an event log headlessly");
  replay->add_option("--terrain", terrain)->check(CLI::IsMember({"flat", "uneven", "hilly", "maze"}));
  replay->add_option("--terrain-seed", terrain_seed);
  replay->add_option("--policy", policy)->required()->check(CLI::ExistingFile);
  replay->add_option("--config", config_path)->check(CLI::ExistingFile);
  replay->add_option("--log", log_path)->required()->check(CLI::ExistingFile);
  replay->add_option("--ticks", ticks)->required();
  replay->add_flag("--playground", playground);
  add_nets(replay);

  CLI::App* mfcc = app.add_subcommand("mfcc", "print MFCC frames of a WAV file as JSON");
  mfcc->add_option("file", wav)->required()->check(CLI::ExistingFile);
  mfcc->add_option("--config", config_path)->check(CLI::ExistingFile);

  CLI::App* localize = app.add_subcommand("localize", "localize a source relative to the array");
  localize->add_option("--source", source, "x,y in meters")->required();
  localize->add_option("--noise", noise, "microphone noise stddev; 0 uses exact arrivals");
  localize->add_option("--seed", seed);
  localize->add_option("--config", config_path)->check(CLI::ExistingFile);

  CLI::App* preset = app.add_subcommand("preset", "write a stimulus waveform to a WAV file");
  preset->add_option("name", preset_name)->required()->check(CLI::IsMember(server::PresetNames()));
  preset->add_option("--variant", variant);
  preset->add_option("--out", out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) return Train(task, config_path, seed, out, iterations);
    if (*eval) return Evaluate(policy, config_path, terrains, seed, seconds);
    if (*temo) return TrainEmotion(modality, train_config, out, per_class, seed);
    if (*run) {
      return Run(terrain, terrain_seed, policy, config_path, serve, playground, nets, record, ticks);
    }
    if (*replay) {
      return Replay(terrain, terrain_seed, policy, config_path, playground, nets, log_path, ticks);
    }
    if (*mfcc) return Mfcc(wav, config_path);
    if (*localize) return Localize(source, noise, seed, config_path);
    if (*preset) return Preset(preset_name, variant, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
