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

#ifndef DYSFST_SYNTHETIC_H_
#define DYSFST_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dysfst/detector.h"
#include "dysfst/emission.h"
#include "dysfst/lexicon.h"
#include "dysfst/metrics.h"

namespace dysfst {

// One edit of a dysfluency plan, positions index the reference.
//   repeat          after r_{position+length-1} is spoken, the span
//                   r_position .. r_{position+length-1} is spoken again
//                   `times` more times
//   delete          r_position is not spoken
//   insert_backjump after r_position is spoken, r_{position-1} is spoken
struct PlanEdit {
  enum class Kind { kRepeat, kDelete, kInsertBackjump };
  Kind kind = Kind::kRepeat;
  int position = 0;
  int length = 1;
  int times = 1;

  static PlanEdit Repeat(int position, int length, int times = 1) {
    return {Kind::kRepeat, position, length, times};
  }
  static PlanEdit Delete(int position) { return {Kind::kDelete, position, 1, 1}; }
  static PlanEdit InsertBackjump(int position) {
    return {Kind::kInsertBackjump, position, 1, 1};
  }
};

struct SyntheticSpec {
  PhonemeSequence reference;
  std::vector<PlanEdit> plan;
  int frames_per_phoneme = 3;
  int blank_frames = 1;
  double confidence = 0.9;
};

struct GoldPhoneme {
  std::string phoneme;
  DysfluencyType type = DysfluencyType::kNormal;
  int ref_position = 0;
};

struct GoldLabels {
  std::vector<GoldPhoneme> spoken;
  std::vector<DeletedPhoneme> deleted;

  PhonemeSequence SpokenPhonemes() const;
  std::vector<DysfluencyEvent> Events() const;
};

// Throws InputError on positions outside the reference, overlapping edits,
// or a plan that leaves nothing spoken.
GoldLabels ExpandPlan(const PhonemeSequence& reference,
                      const std::vector<PlanEdit>& plan);

struct SyntheticUtterance {
  EmissionMatrix emission;
  GoldLabels gold;
};

// Each spoken phoneme is held frames_per_phoneme frames with blank_frames of
// blank between phonemes; every row puts `confidence` on the true class and
// spreads the rest evenly over the other classes. Fully determined by spec.
SyntheticUtterance Synthesize(const SyntheticSpec& spec, const Lexicon& lexicon);

// Adds iid N(0, sigma^2) to every value without renormalizing. sigma == 0
// returns the input unchanged. The same seed yields the same standard normal
// draws for every sigma.
EmissionMatrix InjectNoise(const EmissionMatrix& emission, double sigma,
                           std::uint64_t seed);

}  // namespace dysfst

#endif  // DYSFST_SYNTHETIC_H_
