// Copyright 2026 The dysfst Authors.
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

#include "dysfst/detector.h"

#include <algorithm>

#include "dysfst/error.h"

namespace dysfst {

const char* DysfluencyTypeName(DysfluencyType type) {
  switch (type) {
    case DysfluencyType::kNormal: return "normal";
    case DysfluencyType::kRepetition: return "repetition";
    case DysfluencyType::kInsertion: return "insertion";
    case DysfluencyType::kDeletion: return "deletion";
  }
  return "unknown";
}

std::optional<DysfluencyType> ParseDysfluencyType(std::string_view name) {
  for (auto t : {DysfluencyType::kNormal, DysfluencyType::kRepetition,
                 DysfluencyType::kInsertion, DysfluencyType::kDeletion}) {
    if (name == DysfluencyTypeName(t)) return t;
  }
  return std::nullopt;
}

DysfluencyType DetectorState::Classify(const PathSegment& segment,
                                       const PhonemeSequence& reference,
                                       std::vector<DeletedPhoneme>* deleted) {
  const int start = segment.start_state;
  DysfluencyType type = DysfluencyType::kNormal;
  if (history_.count(start) > 0) {
    type = DysfluencyType::kRepetition;
  } else if (!history_.empty() && start < *history_.begin()) {
    type = DysfluencyType::kInsertion;
  } else if (start > prev_end_ + 1) {
    type = DysfluencyType::kDeletion;
    const int last = std::min(start, static_cast<int>(reference.size()));
    for (int m = std::max(prev_end_ + 1, 0); m < last; ++m) {
      deleted->push_back({m, reference[m]});
    }
  }
  history_.insert(start);
  prev_end_ = segment.end_state;
  return type;
}

DetectionResult DetectDysfluency(std::span<const PathSegment> segments,
                                 const PhonemeSequence& reference) {
  DetectionResult result;
  DetectorState state;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0 && segments[i].frame_begin < segments[i - 1].frame_begin) {
      throw InputError("segments are not ordered by frame_begin at index " +
                       std::to_string(i));
    }
    const PathSegment& seg = segments[i];
    DysfluencyType type = state.Classify(seg, reference, &result.deleted);
    result.annotations.push_back({seg.phoneme, type, seg});
  }
  return result;
}

DysfluencySummary Summarize(const DetectionResult& result) {
  DysfluencySummary s;
  for (const auto& a : result.annotations) {
    switch (a.type) {
      case DysfluencyType::kNormal: ++s.normal; break;
      case DysfluencyType::kRepetition: ++s.repetition; break;
      case DysfluencyType::kInsertion: ++s.insertion; break;
      case DysfluencyType::kDeletion: ++s.deletion; break;
    }
  }
  s.deleted_phonemes = result.deleted.size();
  return s;
}

}  // namespace dysfst
