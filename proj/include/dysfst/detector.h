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

#ifndef DYSFST_DETECTOR_H_
#define DYSFST_DETECTOR_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dysfst/decoder.h"
#include "dysfst/lexicon.h"

namespace dysfst {

enum class DysfluencyType { kNormal, kRepetition, kInsertion, kDeletion };

const char* DysfluencyTypeName(DysfluencyType type);
std::optional<DysfluencyType> ParseDysfluencyType(std::string_view name);

struct DysfluencyAnnotation {
  std::string phoneme;
  DysfluencyType type = DysfluencyType::kNormal;
  PathSegment segment;
};

struct DeletedPhoneme {
  int ref_position = 0;
  std::string phoneme;

  friend bool operator==(const DeletedPhoneme&, const DeletedPhoneme&) = default;
};

struct DetectionResult {
  std::vector<DysfluencyAnnotation> annotations;
  std::vector<DeletedPhoneme> deleted;
};

// Rule fold over segments in order, keyed on each segment's start_state:
//   1. repetition  start already visited
//   2. insertion   start below every visited start (skipped while empty)
//   3. deletion    start > prev_end + 1; r_{prev_end+1} .. r_{start-1} are
//                  reported deleted
//   4. normal
// prev_end starts at -1.
class DetectorState {
 public:
  DysfluencyType Classify(const PathSegment& segment,
                          const PhonemeSequence& reference,
                          std::vector<DeletedPhoneme>* deleted);

  const std::set<int>& History() const { return history_; }
  int PrevEnd() const { return prev_end_; }

 private:
  std::set<int> history_;
  int prev_end_ = -1;
};

// Throws InputError when segments are not ordered by frame_begin.
DetectionResult DetectDysfluency(std::span<const PathSegment> segments,
                                 const PhonemeSequence& reference);

struct DysfluencySummary {
  std::size_t normal = 0;
  std::size_t repetition = 0;
  std::size_t insertion = 0;
  std::size_t deletion = 0;
  std::size_t deleted_phonemes = 0;

  friend bool operator==(const DysfluencySummary&,
                         const DysfluencySummary&) = default;
};

DysfluencySummary Summarize(const DetectionResult& result);

}  // namespace dysfst

#endif  // DYSFST_DETECTOR_H_
