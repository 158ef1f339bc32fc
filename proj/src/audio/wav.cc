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

#include "einu/audio/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "einu/common/error.h"

namespace einu::audio {
namespace {

std::uint32_t ReadU32(const std::uint8_t* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t ReadU16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedFile, what);
}

}  // namespace

void ValidateBuffer(const SampleBuffer& buffer) {
  if (buffer.sample_rate <= 0) throw Error(ErrorCode::kInvalidParams, "sample rate must be positive");
  if (buffer.samples.empty()) throw Error(ErrorCode::kInvalidParams, "empty sample buffer");
  for (double s : buffer.samples) {
    if (!std::isfinite(s) || std::abs(s) > 1.0) {
      throw Error(ErrorCode::kInvalidParams, "samples must be finite and within [-1, 1]");
    }
  }
}

SampleBuffer ReadWav(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 12) Malformed("truncated RIFF header");
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    Malformed("not a RIFF/WAVE file");
  }
  int channels = 0;
  int rate = 0;
  bool have_fmt = false;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = ReadU32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + 16 > bytes.size()) Malformed("truncated fmt chunk");
      const std::uint16_t format = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      rate = static_cast<int>(ReadU32(chunk + 12));
      const std::uint16_t bits = ReadU16(chunk + 22);
      if (format != 1) {
        throw Error(ErrorCode::kUnsupportedEncoding, "format tag " + std::to_string(format) +
                                                         " is not PCM");
      }
      if (bits != 16) {
        throw Error(ErrorCode::kUnsupportedEncoding, std::to_string(bits) + "-bit samples");
      }
      if (channels != 1 && channels != 2) {
        throw Error(ErrorCode::kUnsupportedEncoding, std::to_string(channels) + " channels");
      }
      if (rate <= 0) Malformed("zero sample rate");
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (body + size > bytes.size()) Malformed("truncated data chunk");
      data = bytes.data() + body;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) Malformed("missing fmt chunk");
  if (data == nullptr) Malformed("missing data chunk");
  const std::size_t frame_bytes = 2 * static_cast<std::size_t>(channels);
  if (data_size % frame_bytes != 0) Malformed("data size is not a whole number of frames");
  const std::size_t frames = data_size / frame_bytes;
  if (frames == 0) Malformed("no samples");

  SampleBuffer out;
  out.sample_rate = rate;
  out.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double sum = 0.0;
    for (int c = 0; c < channels; ++c) {
      sum += static_cast<std::int16_t>(ReadU16(data + i * frame_bytes + 2 * c)) / 32768.0;
    }
    out.samples[i] = sum / channels;
  }
  return rate == kSampleRate ? out : Resample(out, kSampleRate);
}

SampleBuffer ReadWavFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return ReadWav(bytes);
}

std::vector<std::uint8_t> EncodeWav(const SampleBuffer& buffer, int channels) {
  if (channels < 1 || channels > 2) throw Error(ErrorCode::kInvalidParams, "1 or 2 channels");
  const auto data_size = static_cast<std::uint32_t>(buffer.samples.size() * 2 * channels);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  PutU32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  PutU32(out, 16);
  PutU16(out, 1);
  PutU16(out, static_cast<std::uint16_t>(channels));
  PutU32(out, static_cast<std::uint32_t>(buffer.sample_rate));
  PutU32(out, static_cast<std::uint32_t>(buffer.sample_rate * 2 * channels));
  PutU16(out, static_cast<std::uint16_t>(2 * channels));
  PutU16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  PutU32(out, data_size);
  for (double s : buffer.samples) {
    const double scaled = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    const auto v = static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled));
    for (int c = 0; c < channels; ++c) PutU16(out, v);
  }
  return out;
}

void WriteWavFile(const std::string& path, const SampleBuffer& buffer) {
  const std::vector<std::uint8_t> bytes = EncodeWav(buffer);
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

SampleBuffer Resample(const SampleBuffer& buffer, int target_rate) {
  if (target_rate <= 0 || buffer.sample_rate <= 0) {
    throw Error(ErrorCode::kInvalidParams, "sample rates must be positive");
  }
  if (buffer.samples.empty()) throw Error(ErrorCode::kInvalidParams, "empty sample buffer");
  SampleBuffer out;
  out.sample_rate = target_rate;
  if (target_rate == buffer.sample_rate) {
    out.samples = buffer.samples;
    return out;
  }
  const std::size_t n = buffer.samples.size();
  const double ratio = static_cast<double>(buffer.sample_rate) / target_rate;
  const auto count = static_cast<std::size_t>(std::floor((n - 1) / ratio)) + 1;
  out.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = i * ratio;
    const auto k = std::min(static_cast<std::size_t>(t), n - 1);
    const double frac = t - k;
    const double next = k + 1 < n ? buffer.samples[k + 1] : buffer.samples[k];
    out.samples[i] = buffer.samples[k] + frac * (next - buffer.samples[k]);
  }
  return out;
}

}  // namespace einu::audio
