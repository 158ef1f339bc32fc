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

#include "einu/emotion/labels.h"

#include <set>
#include <string>

#include "einu/common/angles.h"
#include "einu/common/error.h"

namespace einu::emotion {

Emotion FromRank(int rank) {
  if (rank < 1 || rank > kNumEmotions) {
    throw Error(ErrorCode::kUnknownEmotion, "rank " + std::to_string(rank));
  }
  return static_cast<Emotion>(rank);
}

Emotion FromClassIndex(int index) { return FromRank(index + 1); }

std::string_view EmotionName(Emotion e) {
  switch (e) {
    case Emotion::kAnger: return "anger";
    case Emotion::kDisgust: return "disgust";
    case Emotion::kFear: return "fear";
    case Emotion::kSadness: return "sadness";
    case Emotion::kSurprise: return "surprise";
    case Emotion::kHappiness: return "happiness";
    case Emotion::kNeutral: return "neutral";
  }
  throw Error(ErrorCode::kUnknownEmotion, "rank " + std::to_string(static_cast<int>(e)));
}

Emotion ParseEmotion(std::string_view name) {
  for (Emotion e : kAllEmotions) {
    if (EmotionName(e) == name) return e;
  }
  throw Error(ErrorCode::kUnknownEmotion, "'" + std::string(name) + "'");
}

Emotion Arbitrate(std::optional<Emotion> audio, std::optional<Emotion> video) {
  if (!audio && !video) throw Error(ErrorCode::kNoInput, "nothing to arbitrate");
  if (!audio) return *video;
  if (!video) return *audio;
  return Rank(*audio) <= Rank(*video) ? *audio : *video;
}

FeedbackMap::FeedbackMap() {
  for (Emotion e : kAllEmotions) {
    const std::string name(EmotionName(e));
    table_[e] = {"clip_" + name + ".wav", "face_" + name};
  }
}

FeedbackMap FeedbackMap::FromJson(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kInvalidParams, "feedback map must be an object");
  FeedbackMap map;
  map.table_.clear();
  for (const auto& [key, value] : doc.items()) {
    const Emotion e = ParseEmotion(key);
    try {
      map.table_[e] = {value.at("clip").get<std::string>(), value.at("face").get<std::string>()};
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorCode::kInvalidParams, "feedback for '" + key + "' needs clip and face");
    }
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (Emotion e : kAllEmotions) {
    const auto it = map.table_.find(e);
    if (it == map.table_.end()) {
      throw Error(ErrorCode::kInvalidParams,
                  "feedback map has no entry for '" + std::string(EmotionName(e)) + "'");
    }
    if (!seen.insert({it->second.sound_clip_id, it->second.face_expression_id}).second) {
      throw Error(ErrorCode::kInvalidParams, "feedback for '" + std::string(EmotionName(e)) +
                                                 "' duplicates another label");
    }
  }
  return map;
}

nlohmann::json FeedbackMap::ToJson() const {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [e, a] : table_) {
    doc[std::string(EmotionName(e))] = {{"clip", a.sound_clip_id}, {"face", a.face_expression_id}};
  }
  return doc;
}

const FeedbackAction& FeedbackMap::For(Emotion e) const {
  const auto it = table_.find(e);
  if (it == table_.end()) {
    throw Error(ErrorCode::kUnknownEmotion, "rank " + std::to_string(static_cast<int>(e)));
  }
  return it->second;
}

const FeedbackAction& FeedbackFor(const FeedbackMap& map, Emotion e) { return map.For(e); }

std::string_view BehaviorName(BehaviorKind kind) {
  switch (kind) {
    case BehaviorKind::kHold: return "Hold";
    case BehaviorKind::kSquat: return "Squat";
    case BehaviorKind::kLocomoteTowardSound: return "LocomoteTowardSound";
  }
  return "Hold";
}

BehaviorCommand BehaviorFor(Emotion e, std::optional<double> azimuth, const FeedbackMap& map,
                            int urgency_cutoff) {
  BehaviorCommand cmd;
  cmd.emotion = e;
  cmd.feedback = map.For(e);
  if (Rank(e) <= urgency_cutoff) {
    if (azimuth) {
      cmd.kind = BehaviorKind::kLocomoteTowardSound;
      cmd.azimuth = WrapTwoPi(*azimuth);
    } else {
      cmd.kind = BehaviorKind::kHold;
    }
  } else {
    cmd.kind = BehaviorKind::kSquat;
  }
  return cmd;
}

}  // namespace einu::emotion
