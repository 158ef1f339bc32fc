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

#ifndef EINU_AUDIO_WAV_H_
#define EINU_AUDIO_WAV_H_

#include <cstdint>
#include <string>
#include <vector>

namespace einu::audio {

inline constexpr int kSampleRate = 16000;

struct SampleBuffer {
  std::vector<double> samples;  // in [-1, 1)
  int sample_rate = kSampleRate;

  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

// Throws InvalidParams on an empty buffer, non-finite or out-of-range
// samples, or a non-positive rate.
void ValidateBuffer(const SampleBuffer& buffer);

// RIFF/WAVE, PCM 16-bit, mono or stereo. Stereo is averaged to mono and any
// rate is linearly resampled to 16 kHz. Throws MalformedFile or
// UnsupportedEncoding.
SampleBuffer ReadWav(const std::vector<std::uint8_t>& bytes);
SampleBuffer ReadWavFile(const std::string& path);

// Canonical 44-byte header, PCM16, samples clamped to the int16 range.
// channels > 1 duplicates the signal into every channel.
std::vector<std::uint8_t> EncodeWav(const SampleBuffer& buffer, int channels = 1);
void WriteWavFile(const std::string& path, const SampleBuffer& buffer);

// Linear interpolation onto a new rate; output sample i sits at input time
// i / target_rate.
SampleBuffer Resample(const SampleBuffer& buffer, int target_rate);

}  // namespace einu::audio

#endif  // EINU_AUDIO_WAV_H_
