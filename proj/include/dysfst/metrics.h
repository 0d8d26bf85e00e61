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

#ifndef DYSFST_METRICS_H_
#define DYSFST_METRICS_H_

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dysfst/detector.h"
#include "dysfst/lexicon.h"
#include "dysfst/similarity.h"

namespace dysfst {

// ---- Edit distance ----

enum class EditOp { kMatch, kSubstitute, kDelete, kInsert };

struct EditStep {
  EditOp op;
  int ref_index;  // -1 for insertions
  int hyp_index;  // -1 for deletions
  double cost;
};

struct EditAlignment {
  std::vector<EditStep> steps;
  double cost = 0.0;
  int deletions = 0;
  int insertions = 0;
  int substitutions = 0;

  // Replays the steps on ref; equals hyp for a valid alignment.
  PhonemeSequence Apply(const PhonemeSequence& ref,
                        const PhonemeSequence& hyp) const;
};

// Substitution cost of a ref/hyp pair; deletions and insertions cost 1.
using SubstitutionCost =
    std::function<double(std::string_view ref, std::string_view hyp)>;

// Minimum-cost alignment. Ties prefer match/substitute, then deletion, then
// insertion, walking back from the end.
EditAlignment Align(const PhonemeSequence& ref, const PhonemeSequence& hyp,
                    const SubstitutionCost& sub_cost);

EditAlignment UnitAlignment(const PhonemeSequence& ref,
                            const PhonemeSequence& hyp);
EditAlignment WeightedAlignment(const PhonemeSequence& ref,
                                const PhonemeSequence& hyp,
                                const SimilarityMatrix& sim);

// Both divide by the reference length; empty ref throws InputError.
double Per(const PhonemeSequence& ref, const PhonemeSequence& hyp);
double Wper(const PhonemeSequence& ref, const PhonemeSequence& hyp,
            const SimilarityMatrix& sim);

// Corpus rates are micro averages: total cost over total reference length.
class ErrorRateAccumulator {
 public:
  explicit ErrorRateAccumulator(const SimilarityMatrix& sim) : sim_(&sim) {}

  void Add(const PhonemeSequence& ref, const PhonemeSequence& hyp);

  std::size_t Utterances() const { return utterances_; }
  // Throw InputError on an empty corpus.
  double Per() const;
  double Wper() const;

 private:
  const SimilarityMatrix* sim_;
  double unit_cost_ = 0.0;
  double weighted_cost_ = 0.0;
  std::size_t ref_length_ = 0;
  std::size_t utterances_ = 0;
};

// ---- Detection accuracy ----

// A non-normal label: repetition and insertion carry the start state of the
// segment, deletion the position of the deleted reference phoneme.
struct DysfluencyEvent {
  DysfluencyType type;
  int ref_position;

  friend auto operator<=>(const DysfluencyEvent&,
                          const DysfluencyEvent&) = default;
};

// Events of a detector result: one per repetition/insertion annotation and
// one per deleted reference phoneme. Deletion trigger segments are not
// counted separately.
std::vector<DysfluencyEvent> EventsFromDetection(const DetectionResult& det);

enum class AccuracyLevel {
  kCount,     // per type: min(hyp count, gold count)
  kPosition,  // per type: multiset intersection on reference position
};

const char* AccuracyDefinition(AccuracyLevel level);

struct TypeTally {
  std::size_t gold = 0;
  std::size_t hyp = 0;
  std::size_t matched = 0;
};

inline constexpr std::array<DysfluencyType, 3> kScoredTypes = {
    DysfluencyType::kRepetition, DysfluencyType::kDeletion,
    DysfluencyType::kInsertion};

// Accuracy per type = sum of matched / sum of gold over the corpus.
class DetectionAccumulator {
 public:
  explicit DetectionAccumulator(AccuracyLevel level = AccuracyLevel::kCount)
      : level_(level) {}

  void Add(const std::vector<DysfluencyEvent>& gold,
           const std::vector<DysfluencyEvent>& hyp);

  const TypeTally& Tally(DysfluencyType type) const;
  // nullopt when the corpus holds no gold events of this type.
  std::optional<double> Accuracy(DysfluencyType type) const;
  AccuracyLevel Level() const { return level_; }

 private:
  AccuracyLevel level_;
  std::array<TypeTally, 4> tallies_{};
};

}  // namespace dysfst

#endif  // DYSFST_METRICS_H_
