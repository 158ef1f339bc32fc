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

#include "einu/server/presets.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "einu/common/angles.h"
#include "einu/common/error.h"

namespace einu::server {

namespace {

constexpr int kRate = 16000;
constexpr double kPeak = 0.99;  // samples live in [-1, 1)

struct Voice {
  double f0;       // Hz
  double tremolo;  // Hz
  double breath;   // noise fraction
  int harmonics;
};

Voice VoiceFor(emotion::Emotion e) {
  switch (e) {
    case emotion::Emotion::kAnger: return {220.0, 9.0, 0.30, 8};
    case emotion::Emotion::kDisgust: return {140.0, 3.0, 0.20, 5};
    case emotion::Emotion::kFear: return {330.0, 12.0, 0.25, 4};
    case emotion::Emotion::kSadness: return {110.0, 1.5, 0.10, 3};
    case emotion::Emotion::kSurprise: return {400.0, 6.0, 0.05, 6};
    case emotion::Emotion::kHappiness: return {260.0, 4.5, 0.05, 7};
    case emotion::Emotion::kNeutral: return {170.0, 0.0, 0.02, 2};
  }
  return {170.0, 0.0, 0.02, 2};
}

void Normalize(std::vector<double>& x) {
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    for (double& v : x) v *= kPeak / peak;
  }
}

}  // namespace

std::string VoicePresetName(emotion::Emotion e) {
  return "voice_" + std::string(emotion::EmotionName(e));
}

std::vector<std::string> PresetNames() {
  std::vector<std::string> names{"click"};
  for (emotion::Emotion e : emotion::kAllEmotions) names.push_back(VoicePresetName(e));
  return names;
}

bool IsPreset(std::string_view name) {
  const auto names = PresetNames();
  return std::find(names.begin(), names.end(), name) != names.end();
}

audio::SampleBuffer PresetWaveform(std::string_view name, std::uint64_t variant) {
  audio::SampleBuffer buf;
  buf.sample_rate = kRate;
  buf.samples.assign(kRate, 0.0);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ variant);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double jitter = variant == 0 ? 0.0 : 1.0;
  if (name == "click") {
    for (int i = 0; i < kRate; ++i) {
      buf.samples[i] = std::exp(-i / 80.0) * (i == 0 ? 1.0 : gauss(rng) * 0.5);
    }
    Normalize(buf.samples);
    buf.samples[0] = kPeak;
    return buf;
  }
  for (emotion::Emotion e : emotion::kAllEmotions) {
    if (name != VoicePresetName(e)) continue;
    const Voice v = VoiceFor(e);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double f0 = v.f0 * (1.0 + 0.03 * jitter * u(rng));
    const double trem = v.tremolo * (1.0 + 0.1 * jitter * u(rng));
    const double breath = v.breath * (1.0 + 0.2 * jitter * u(rng));
    const double phase0 = jitter * kPi * u(rng);
    for (int i = 0; i < kRate; ++i) {
      const double t = static_cast<double>(i) / kRate;
      double s = 0.0;
      for (int h = 1; h <= v.harmonics; ++h) s += std::sin(kTwoPi * f0 * h * t + h * phase0) / h;
      const double am = 1.0 - 0.5 * (1.0 - std::cos(kTwoPi * trem * t)) * (v.tremolo > 0 ? 0.5 : 0.0);
      buf.samples[i] = am * s + breath * gauss(rng);
    }
    Normalize(buf.samples);
    // Sharp attack so the onset detector fires on the first sample.
    buf.samples[0] = kPeak;
    return buf;
  }
  throw Error(ErrorCode::kInvalidParams, "unknown waveform preset '" + std::string(name) + "'");
}

emotion::AudioDataset PresetAudioDataset(int per_class, std::uint64_t first_variant,
                                         const audio::MfccConfig& config) {
  emotion::AudioDataset data;
  for (emotion::Emotion e : emotion::kAllEmotions) {
    for (int i = 0; i < per_class; ++i) {
      const audio::SampleBuffer b = PresetWaveform(VoicePresetName(e), first_variant + i);
      data.sequences.push_back(audio::ComputeMfcc(b, config).frames);
      data.labels.push_back(emotion::ClassIndex(e));
    }
  }
  return data;
}

}  // namespace einu::server
