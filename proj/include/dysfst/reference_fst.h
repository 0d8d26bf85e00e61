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

#ifndef DYSFST_REFERENCE_FST_H_
#define DYSFST_REFERENCE_FST_H_

#include <optional>
#include <string>
#include <vector>

#include "dysfst/lexicon.h"
#include "dysfst/wfst.h"

namespace dysfst {

// Severity parameter beta. Fluent transitions carry probability
// alpha = 1 - 10^-beta; the base error rate is err0 = 10^-beta and a
// transition that lands `distance` reference positions away from the
// monotone next one gets err0 * N(distance; 0, 1).
//
// Probabilities are evaluated in double precision on purpose: for very large
// beta err0 underflows to 0, every non-forward arc becomes impossible and
// the reference machine degenerates to a chain.
class SeverityConfig {
 public:
  explicit SeverityConfig(double beta);

  double Beta() const { return beta_; }
  double Alpha() const { return alpha_; }
  double Err0() const { return err0_; }
  double Err(int distance) const;
  bool Underflowed() const { return err0_ == 0.0; }

 private:
  double beta_;
  double err0_;
  double alpha_;
};

struct ReferenceFstOptions {
  // Only state S accepts; otherwise every state i < S also accepts with
  // weight -log err(S - i) so truncated utterances still decode.
  bool strict_final = false;
  // Adds self-loops i -> i consuming any phoneme other than r_i.
  bool free_insertion_arcs = false;
};

enum class ArcFamily { kForward, kBackward, kSkip, kFreeInsertion };

const char* ArcFamilyName(ArcFamily family);

// What one output label of the reference machine stands for: the arc's
// endpoints and the phoneme it consumes. ref_position is the index m of the
// consumed reference phoneme r_m (dst == m + 1), or -1 for free insertions.
struct TransitionRecord {
  StateId src = kNoState;
  StateId dst = kNoState;
  Label phoneme = kEpsilon;
  ArcFamily family = ArcFamily::kForward;
  int ref_position = -1;
  int distance = 0;
};

// Dysfluency-aware reading of a reference sequence r_0..r_{S-1}. State i
// means i phonemes read in order; start {0}, accept {S} (plus early accepts).
// Every arc consuming r_m ends in state m + 1:
//   forward   i -> i+1 reading r_i, weight -log alpha
//   backward  j -> m+1 reading r_m for m + 1 < j, distance j - m
//   skip      i -> k+1 reading r_k for k > i, distance k - i
// Arcs whose probability underflows to zero are not built.
class ReferenceFst {
 public:
  const Wfst& Machine() const { return machine_; }
  const PhonemeSequence& Reference() const { return reference_; }
  int NumReferencePhonemes() const {
    return static_cast<int>(reference_.size());
  }

  // Output symbol names look like "5<trans>4:N".
  const TransitionRecord& Decode(Label olabel) const;
  std::optional<Label> Encode(StateId src, StateId dst, Label phoneme) const;
  const std::vector<TransitionRecord>& Records() const { return records_; }

  std::size_t CountArcs(ArcFamily family) const;
  // Only forward arcs and only the final state accepting.
  bool IsLinear() const;

  const std::vector<std::string>& Warnings() const { return warnings_; }

  static std::string RecordName(const TransitionRecord& r,
                                const Lexicon& lexicon);

 private:
  friend ReferenceFst BuildReferenceFst(const PhonemeSequence&, const Lexicon&,
                                        const SeverityConfig&,
                                        const ReferenceFstOptions&);
  ReferenceFst(Wfst machine, PhonemeSequence reference,
               std::vector<TransitionRecord> records,
               std::vector<std::string> warnings);

  Wfst machine_;
  PhonemeSequence reference_;
  std::vector<TransitionRecord> records_;  // records_[olabel - 1]
  std::vector<std::string> warnings_;
};

inline constexpr const char* kBetaUnderflowWarning = "beta-underflow";

// Throws InputError for an empty reference or an unknown phoneme.
ReferenceFst BuildReferenceFst(const PhonemeSequence& reference,
                               const Lexicon& lexicon,
                               const SeverityConfig& config,
                               const ReferenceFstOptions& options = {});

}  // namespace dysfst

#endif  // DYSFST_REFERENCE_FST_H_
