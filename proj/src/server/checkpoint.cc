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

#include "einu/server/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "einu/common/error.h"

namespace einu::server {

using nlohmann::json;

namespace {

constexpr std::size_t kMagicLen = 8;
constexpr std::size_t kPrefixLen = kMagicLen + 4;

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes little-endian");

struct Tensor {
  std::string name;
  std::vector<int> shape;
  const double* data = nullptr;
};

std::size_t Elements(const std::vector<int>& shape) {
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d);
  return n;
}

std::vector<std::uint8_t> Encode(json header, const std::vector<Tensor>& tensors) {
  json shapes = json::array();
  std::size_t total = 0;
  for (const Tensor& t : tensors) {
    shapes.push_back({{"name", t.name}, {"shape", t.shape}});
    total += Elements(t.shape);
  }
  header["version"] = kCheckpointVersion;
  header["layer_shapes"] = shapes;
  const std::string text = header.dump();
  std::vector<std::uint8_t> out(kPrefixLen + text.size() + 4 * total);
  std::memcpy(out.data(), kCheckpointMagic, kMagicLen);
  const auto len = static_cast<std::uint32_t>(text.size());
  std::memcpy(out.data() + kMagicLen, &len, 4);
  std::memcpy(out.data() + kPrefixLen, text.data(), text.size());
  std::uint8_t* p = out.data() + kPrefixLen + text.size();
  for (const Tensor& t : tensors) {
    const std::size_t n = Elements(t.shape);
    for (std::size_t i = 0; i < n; ++i, p += 4) {
      const float f = static_cast<float>(t.data[i]);
      std::memcpy(p, &f, 4);
    }
  }
  return out;
}

struct Decoded {
  json header;
  std::vector<std::pair<std::string, std::vector<int>>> shapes;
  std::vector<double> values;
};

json ParseHeader(std::span<const std::uint8_t> bytes, std::size_t* payload_start) {
  if (bytes.size() < kMagicLen ||
      std::memcmp(bytes.data(), kCheckpointMagic, kMagicLen - 1) != 0) {
    throw Error(ErrorCode::kBadMagic, "magic: expected \"EINUPOL1\"");
  }
  if (bytes[kMagicLen - 1] != static_cast<std::uint8_t>(kCheckpointMagic[kMagicLen - 1])) {
    throw Error(ErrorCode::kVersionMismatch,
                std::string("magic: version byte '") + static_cast<char>(bytes[kMagicLen - 1]) +
                    "', expected '1'");
  }
  if (bytes.size() < kPrefixLen) throw Error(ErrorCode::kLengthMismatch, "header_length: truncated");
  std::uint32_t len = 0;
  std::memcpy(&len, bytes.data() + kMagicLen, 4);
  if (bytes.size() - kPrefixLen < len) {
    throw Error(ErrorCode::kLengthMismatch, "header_length: " + std::to_string(len) +
                                                " bytes declared, file too short");
  }
  json header;
  try {
    header = json::parse(bytes.begin() + kPrefixLen, bytes.begin() + kPrefixLen + len);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedFile, std::string("header: ") + e.what());
  }
  if (!header.is_object()) throw Error(ErrorCode::kMalformedFile, "header: not an object");
  if (header.value("version", -1) != kCheckpointVersion) {
    throw Error(ErrorCode::kVersionMismatch,
                "version: " + header.value("version", json()).dump() + ", expected 1");
  }
  *payload_start = kPrefixLen + len;
  return header;
}

Decoded Decode(std::span<const std::uint8_t> bytes, const std::string& kind) {
  Decoded d;
  std::size_t start = 0;
  d.header = ParseHeader(bytes, &start);
  if (d.header.value("kind", std::string()) != kind) {
    throw Error(ErrorCode::kInvalidParams,
                "kind: '" + d.header.value("kind", std::string()) + "', expected '" + kind + "'");
  }
  std::size_t total = 0;
  try {
    for (const json& t : d.header.at("layer_shapes")) {
      d.shapes.emplace_back(t.at("name").get<std::string>(), t.at("shape").get<std::vector<int>>());
      for (int dim : d.shapes.back().second) {
        if (dim < 0) throw Error(ErrorCode::kMalformedFile, "layer_shapes: negative dimension");
      }
      total += Elements(d.shapes.back().second);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedFile, std::string("layer_shapes: ") + e.what());
  }
  const std::size_t payload = bytes.size() - start;
  if (payload != 4 * total) {
    throw Error(ErrorCode::kLengthMismatch, "payload: " + std::to_string(payload) +
                                                " bytes, layer_shapes declare " +
                                                std::to_string(4 * total));
  }
  d.values.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    float f;
    std::memcpy(&f, bytes.data() + start + 4 * i, 4);
    d.values[i] = f;
  }
  return d;
}

void AppendMlp(const std::string& prefix, const rl::Mlp& mlp, std::vector<Tensor>* out) {
  const double* p = mlp.params().data();
  const auto shapes = mlp.LayerShapes();
  for (std::size_t k = 0; k < shapes.size(); ++k) {
    const std::string name =
        prefix + "." + std::to_string(k / 2) + (k % 2 == 0 ? ".weight" : ".bias");
    out->push_back({name, shapes[k], p});
    p += Elements(shapes[k]);
  }
}

// Copies `count` values starting at *cursor, checking the declared names.
void Take(const Decoded& d, std::size_t* tensor, std::size_t* cursor, Eigen::Index count,
          double* dst, const std::string& expect_prefix) {
  std::size_t have = 0;
  while (have < static_cast<std::size_t>(count)) {
    if (*tensor >= d.shapes.size()) {
      throw Error(ErrorCode::kLengthMismatch, "layer_shapes: missing tensors for " + expect_prefix);
    }
    const auto& [name, shape] = d.shapes[*tensor];
    if (name.rfind(expect_prefix, 0) != 0) {
      throw Error(ErrorCode::kMalformedFile,
                  "layer_shapes: found '" + name + "' where " + expect_prefix + " was expected");
    }
    have += Elements(shape);
    ++*tensor;
  }
  if (have != static_cast<std::size_t>(count)) {
    throw Error(ErrorCode::kLengthMismatch, "layer_shapes: " + expect_prefix + " has " +
                                                std::to_string(have) + " values, expected " +
                                                std::to_string(count));
  }
  std::copy(d.values.begin() + static_cast<std::ptrdiff_t>(*cursor),
            d.values.begin() + static_cast<std::ptrdiff_t>(*cursor + have), dst);
  *cursor += have;
}

template <typename Net>
std::vector<Tensor> NetTensors(const Net& net) {
  std::vector<Tensor> tensors;
  for (const emotion::TensorSpec& t : net.layout().tensors()) {
    tensors.push_back({t.name, {t.rows, t.cols}, net.params().data() + t.offset});
  }
  return tensors;
}

template <typename Net>
void FillNet(const Decoded& d, Net& net) {
  const auto& specs = net.layout().tensors();
  if (specs.size() != d.shapes.size()) {
    throw Error(ErrorCode::kLengthMismatch, "layer_shapes: " + std::to_string(d.shapes.size()) +
                                                " tensors, net_shape implies " +
                                                std::to_string(specs.size()));
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (d.shapes[i].first != specs[i].name ||
        d.shapes[i].second != std::vector<int>{specs[i].rows, specs[i].cols}) {
      throw Error(ErrorCode::kLengthMismatch,
                  "layer_shapes: '" + d.shapes[i].first + "' disagrees with net_shape");
    }
  }
  std::copy(d.values.begin(), d.values.end(), net.params().data());
}

}  // namespace

std::vector<std::uint8_t> EncodePolicy(const rl::PolicyParams& p) {
  json header = {{"kind", "policy"},
                 {"task", p.task},
                 {"action_dim", p.action_dim()},
                 {"bounds", {{"lo", p.feedback_lo}, {"hi", p.feedback_hi}}},
                 {"obs_layout", p.obs_layout},
                 {"hyperparams", p.hyperparams},
                 {"seed", p.seed},
                 {"actor_sizes", p.actor.sizes()},
                 {"critic_sizes", p.critic.sizes()},
                 {"obs_norm", {{"count", p.obs_norm.count}, {"clip", p.obs_norm.clip}}}};
  std::vector<Tensor> tensors;
  AppendMlp("actor", p.actor, &tensors);
  tensors.push_back({"log_std", {static_cast<int>(p.log_std.size())}, p.log_std.data()});
  AppendMlp("critic", p.critic, &tensors);
  tensors.push_back({"obs_norm.mean", {p.obs_norm.dim()}, p.obs_norm.mean.data()});
  tensors.push_back({"obs_norm.var", {p.obs_norm.dim()}, p.obs_norm.var.data()});
  return Encode(std::move(header), tensors);
}

rl::PolicyParams DecodePolicy(std::span<const std::uint8_t> bytes) {
  const Decoded d = Decode(bytes, "policy");
  rl::PolicyParams p;
  try {
    const json& h = d.header;
    p.actor = rl::Mlp(h.at("actor_sizes").get<std::vector<int>>());
    p.critic = rl::Mlp(h.at("critic_sizes").get<std::vector<int>>());
    p.task = h.at("task").get<std::string>();
    p.feedback_lo = h.at("bounds").at("lo").get<std::vector<double>>();
    p.feedback_hi = h.at("bounds").at("hi").get<std::vector<double>>();
    p.obs_layout = h.at("obs_layout").get<std::vector<std::string>>();
    p.hyperparams = h.at("hyperparams");
    p.seed = h.at("seed").get<std::uint64_t>();
    p.obs_norm = rl::RunningNormalizer(p.actor.input_dim());
    p.obs_norm.count = h.at("obs_norm").at("count").get<double>();
    p.obs_norm.clip = h.at("obs_norm").at("clip").get<double>();
    if (h.at("action_dim").get<int>() != p.actor.output_dim()) {
      throw Error(ErrorCode::kMalformedFile, "action_dim: disagrees with actor_sizes");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedFile, std::string("header: ") + e.what());
  }
  p.log_std = Eigen::VectorXd::Zero(p.actor.output_dim());
  std::size_t tensor = 0, cursor = 0;
  Take(d, &tensor, &cursor, p.actor.num_params(), p.actor.params().data(), "actor.");
  Take(d, &tensor, &cursor, p.log_std.size(), p.log_std.data(), "log_std");
  Take(d, &tensor, &cursor, p.critic.num_params(), p.critic.params().data(), "critic.");
  Take(d, &tensor, &cursor, p.obs_norm.dim(), p.obs_norm.mean.data(), "obs_norm.mean");
  Take(d, &tensor, &cursor, p.obs_norm.dim(), p.obs_norm.var.data(), "obs_norm.var");
  if (tensor != d.shapes.size()) {
    throw Error(ErrorCode::kLengthMismatch, "layer_shapes: unexpected trailing tensor '" +
                                                d.shapes[tensor].first + "'");
  }
  return p;
}

std::vector<std::uint8_t> EncodeAudioNet(const emotion::AudioNet& net) {
  return Encode({{"kind", "audio_net"}, {"net_shape", emotion::AudioNetShapeToJson(net.shape())}},
                NetTensors(net));
}

std::vector<std::uint8_t> EncodeVideoNet(const emotion::VideoNet& net) {
  return Encode({{"kind", "video_net"}, {"net_shape", emotion::VideoNetShapeToJson(net.shape())}},
                NetTensors(net));
}

emotion::AudioNet DecodeAudioNet(std::span<const std::uint8_t> bytes) {
  const Decoded d = Decode(bytes, "audio_net");
  emotion::AudioNet net(emotion::AudioNetShapeFromJson(d.header.value("net_shape", json::object())));
  FillNet(d, net);
  return net;
}

emotion::VideoNet DecodeVideoNet(std::span<const std::uint8_t> bytes) {
  const Decoded d = Decode(bytes, "video_net");
  emotion::VideoNet net(emotion::VideoNetShapeFromJson(d.header.value("net_shape", json::object())));
  FillNet(d, net);
  return net;
}

json PeekHeader(std::span<const std::uint8_t> bytes) {
  std::size_t start = 0;
  return ParseHeader(bytes, &start);
}

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFileBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path.string());
}

void SavePolicyCheckpoint(const rl::PolicyParams& params, const std::filesystem::path& path) {
  WriteFileBytes(path, EncodePolicy(params));
}

rl::PolicyParams LoadPolicyCheckpoint(const std::filesystem::path& path) {
  return DecodePolicy(ReadFileBytes(path));
}

}  // namespace einu::server
