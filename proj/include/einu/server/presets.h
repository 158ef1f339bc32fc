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

#ifndef EINU_SERVER_PRESETS_H_
#define EINU_SERVER_PRESETS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "einu/audio/mfcc.h"
#include "einu/audio/wav.h"
#include "einu/emotion/labels.h"
#include "einu/emotion/nets.h"

namespace einu::server {

// Synthetic stimulus waveforms, 1 s at 16 kHz, peak 0.99. "voice_<emotion>"
// presets are harmonic tones whose pitch, tremolo and breathiness differ by
// label; "click" is a decaying broadband burst. A nonzero variant jitters
// pitch, tremolo and noise so labeled training sets can be drawn.
std::vector<std::string> PresetNames();
std::string VoicePresetName(emotion::Emotion e);
bool IsPreset(std::string_view name);

// Throws InvalidParams for unknown names.
audio::SampleBuffer PresetWaveform(std::string_view name, std::uint64_t variant = 0);

// MFCC sequences of voice presets, variants first_variant.. per label.
emotion::AudioDataset PresetAudioDataset(int per_class, std::uint64_t first_variant = 1,
                                         const audio::MfccConfig& config = {});

}  // namespace einu::server

#endif  // EINU_SERVER_PRESETS_H_
