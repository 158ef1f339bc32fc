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

#ifndef EINU_EMOTION_LABELS_H_
#define EINU_EMOTION_LABELS_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace einu::emotion {

// Value is the priority rank; lower rank wins arbitration.
enum class Emotion {
  kAnger = 1,
  kDisgust = 2,
  kFear = 3,
  kSadness = 4,
  kSurprise = 5,
  kHappiness = 6,
  kNeutral = 7,
};

inline constexpr int kNumEmotions = 7;

inline constexpr std::array<Emotion, kNumEmotions> kAllEmotions{
    Emotion::kAnger,    Emotion::kDisgust,   Emotion::kFear,   Emotion::kSadness,
    Emotion::kSurprise, Emotion::kHappiness, Emotion::kNeutral};

inline int Rank(Emotion e) { return static_cast<int>(e); }
// Class index used by the networks: rank - 1.
inline int ClassIndex(Emotion e) { return Rank(e) - 1; }
// Throws UnknownEmotion outside 0..6.
Emotion FromClassIndex(int index);
Emotion FromRank(int rank);

std::string_view EmotionName(Emotion e);
// Throws UnknownEmotion.
Emotion ParseEmotion(std::string_view name);

// Smaller rank wins; a single input passes through. Throws NoInput.
Emotion Arbitrate(std::optional<Emotion> audio, std::optional<Emotion> video);

struct FeedbackAction {
  std::string sound_clip_id;
  std::string face_expression_id;

  bool operator==(const FeedbackAction&) const = default;
};

// Total, injective emotion -> feedback table.
class FeedbackMap {
 public:
  // clip_<name>.wav / face_<name> for every label.
  FeedbackMap();
  // {emotion: {clip, face}}. Throws InvalidParams if a label is missing or
  // two labels share an action, UnknownEmotion on an unknown key.
  static FeedbackMap FromJson(const nlohmann::json& doc);
  nlohmann::json ToJson() const;

  const FeedbackAction& For(Emotion e) const;

 private:
  std::map<Emotion, FeedbackAction> table_;
};

// Throws UnknownEmotion for ranks outside 1..7 (e.g. a corrupted label).
const FeedbackAction& FeedbackFor(const FeedbackMap& map, Emotion e);

enum class BehaviorKind { kHold, kSquat, kLocomoteTowardSound };
std::string_view BehaviorName(BehaviorKind kind);

struct BehaviorCommand {
  BehaviorKind kind = BehaviorKind::kHold;
  std::optional<double> azimuth;  // wrapped to [0, 2 pi) when locomoting
  std::optional<Emotion> emotion;
  FeedbackAction feedback;
};

// Rank <= urgency_cutoff with an azimuth locomotes toward the sound, without
// one holds; less urgent emotions squat. Feedback is always attached.
BehaviorCommand BehaviorFor(Emotion e, std::optional<double> azimuth, const FeedbackMap& map,
                            int urgency_cutoff = 4);

}  // namespace einu::emotion

#endif  // EINU_EMOTION_LABELS_H_
