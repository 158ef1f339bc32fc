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

#ifndef EINU_SERVER_CHECKPOINT_H_
#define EINU_SERVER_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "einu/emotion/nets.h"
#include "einu/rl/policy.h"

namespace einu::server {

// File layout:
//   8 bytes   magic "EINUPOL1" (the last byte is the format version)
//   4 bytes   header length H, little-endian uint32
//   H bytes   JSON header
//   payload   float32 little-endian, tensors in header "layer_shapes" order
//
// Header keys: version, kind ("policy", "audio_net", "video_net"),
// layer_shapes [{name, shape}], and per kind:
//   policy:    task, action_dim, bounds {lo, hi}, obs_layout, hyperparams,
//              seed, actor_sizes, critic_sizes, obs_norm {count, clip}
//   audio/video net: net_shape
// Values are stored as float; parameters must already be float-representable
// (training snaps them) for the round trip to be bit-exact.
inline constexpr char kCheckpointMagic[] = "EINUPOL1";
inline constexpr int kCheckpointVersion = 1;

std::vector<std::uint8_t> EncodePolicy(const rl::PolicyParams& params);
std::vector<std::uint8_t> EncodeAudioNet(const emotion::AudioNet& net);
std::vector<std::uint8_t> EncodeVideoNet(const emotion::VideoNet& net);

// Throw BadMagic, VersionMismatch, LengthMismatch, MalformedFile (header),
// InvalidParams (wrong kind). Messages name the failing field.
rl::PolicyParams DecodePolicy(std::span<const std::uint8_t> bytes);
emotion::AudioNet DecodeAudioNet(std::span<const std::uint8_t> bytes);
emotion::VideoNet DecodeVideoNet(std::span<const std::uint8_t> bytes);

// Header only (after magic and length checks).
nlohmann::json PeekHeader(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

void SavePolicyCheckpoint(const rl::PolicyParams& params, const std::filesystem::path& path);
rl::PolicyParams LoadPolicyCheckpoint(const std::filesystem::path& path);

}  // namespace einu::server

#endif  // EINU_SERVER_CHECKPOINT_H_
