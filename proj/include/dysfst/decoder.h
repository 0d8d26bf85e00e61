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

#ifndef DYSFST_DECODER_H_
#define DYSFST_DECODER_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dysfst/emission.h"
#include "dysfst/lexicon.h"
#include "dysfst/path.h"
#include "dysfst/reference_fst.h"
#include "dysfst/wfst.h"

namespace dysfst {

// One recognized phoneme. start_state/end_state are the reference span
// m -> m + 1 of the consumed phoneme r_m (for a free insertion at state i
// both are i); arc_src/arc_dst is the reference arc actually traversed.
// Frames are [frame_begin, frame_end): the run of frames CTC collapsed into
// this phoneme.
struct PathSegment {
  int start_state = 0;
  int end_state = 0;
  std::string phoneme;
  int frame_begin = 0;
  int frame_end = 0;
  double time_begin_ms = 0.0;
  double time_end_ms = 0.0;
  StateId arc_src = kNoState;
  StateId arc_dst = kNoState;
  ArcFamily family = ArcFamily::kForward;
  std::string transition;  // e.g. "5<trans>4:N"
};

struct Transcription {
  std::vector<PathSegment> segments;
  PhonemeSequence phonemes;
  TropicalWeight total_weight;
  double beta = 0.0;
  int num_frames = 0;
  double frame_shift_ms = kDefaultFrameShiftMs;
};

struct DecodeResult {
  std::optional<Transcription> transcription;  // nullopt: no accepting path
  std::vector<std::string> warnings;

  bool NoPath() const { return !transcription.has_value(); }
};

// The decoding graph (T o S) n emission, materialized.
struct DecodingGraphs {
  ReferenceFst reference;
  Wfst composed;
  Wfst emission;
  Wfst lattice;
};

// Decodes emissions against a reference through the CTC topology composed
// with the dysfluency-aware reference machine. The CTC topology is built
// once per lexicon; Decode is const and may be called concurrently.
class Decoder {
 public:
  explicit Decoder(Lexicon lexicon);

  const Lexicon& GetLexicon() const { return lexicon_; }
  const Wfst& CtcTopology() const { return ctc_; }

  DecodingGraphs BuildGraphs(const EmissionMatrix& emission,
                             const PhonemeSequence& reference,
                             const SeverityConfig& config,
                             const ReferenceFstOptions& options = {}) const;

  DecodeResult Decode(const EmissionMatrix& emission,
                      const PhonemeSequence& reference,
                      const SeverityConfig& config,
                      const ReferenceFstOptions& options = {}) const;

 private:
  Lexicon lexicon_;
  Wfst ctc_;
};

// Collapses a lattice path into segments; an arc with a reference output
// opens a segment, repeats of the same frame label extend it, anything else
// closes it.
std::vector<PathSegment> SegmentsFromPath(const Path& lattice_path,
                                          const ReferenceFst& reference,
                                          const Lexicon& lexicon);

std::vector<PathSegment> SegmentTimestamps(std::vector<PathSegment> segments,
                                           double frame_shift_ms);

// Frame ranges of [0, num_frames) not covered by any segment (blank runs).
std::vector<std::pair<int, int>> SilenceSpans(
    const std::vector<PathSegment>& segments, int num_frames);

}  // namespace dysfst

#endif  // DYSFST_DECODER_H_
