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

#include "dysfst/decoder.h"

#include <stdexcept>

#include "dysfst/compose.h"
#include "dysfst/ctc_topology.h"
#include "dysfst/intersect.h"
#include "dysfst/shortest_path.h"

namespace dysfst {

Decoder::Decoder(Lexicon lexicon)
    : lexicon_(std::move(lexicon)), ctc_(BuildCtcTopology(lexicon_)) {}

DecodingGraphs Decoder::BuildGraphs(const EmissionMatrix& emission,
                                    const PhonemeSequence& reference,
                                    const SeverityConfig& config,
                                    const ReferenceFstOptions& options) const {
  ReferenceFst ref = BuildReferenceFst(reference, lexicon_, config, options);
  Wfst acceptor = BuildEmissionAcceptor(emission, lexicon_);
  Wfst composed = Compose(ctc_, ref.Machine());
  Wfst lattice = Intersect(composed, acceptor);
  return DecodingGraphs{std::move(ref), std::move(composed),
                        std::move(acceptor), std::move(lattice)};
}

DecodeResult Decoder::Decode(const EmissionMatrix& emission,
                             const PhonemeSequence& reference,
                             const SeverityConfig& config,
                             const ReferenceFstOptions& options) const {
  DecodingGraphs graphs = BuildGraphs(emission, reference, config, options);
  DecodeResult result;
  result.warnings = graphs.reference.Warnings();
  std::optional<Path> best = ShortestPath(graphs.lattice);
  if (!best) return result;

  Transcription tr;
  tr.segments = SegmentTimestamps(
      SegmentsFromPath(*best, graphs.reference, lexicon_),
      emission.FrameShiftMs());
  for (const auto& seg : tr.segments) tr.phonemes.push_back(seg.phoneme);
  tr.total_weight = best->total_weight;
  tr.beta = config.Beta();
  tr.num_frames = emission.NumFrames();
  tr.frame_shift_ms = emission.FrameShiftMs();
  result.transcription = std::move(tr);
  return result;
}

std::vector<PathSegment> SegmentsFromPath(const Path& lattice_path,
                                          const ReferenceFst& reference,
                                          const Lexicon& lexicon) {
  std::vector<PathSegment> segments;
  int frame = 0;
  bool open = false;
  Label open_label = kEpsilon;
  for (const Arc& arc : lattice_path.arcs) {
    if (arc.ilabel == kEpsilon) {
      if (arc.olabel != kEpsilon) {
        throw std::logic_error("reference output on a frameless arc");
      }
      continue;
    }
    if (arc.olabel != kEpsilon) {
      const TransitionRecord& rec = reference.Decode(arc.olabel);
      PathSegment seg;
      if (rec.ref_position >= 0) {
        seg.start_state = rec.ref_position;
        seg.end_state = rec.ref_position + 1;
      } else {
        seg.start_state = seg.end_state = rec.src;
      }
      seg.phoneme = lexicon.Symbol(rec.phoneme);
      seg.frame_begin = frame;
      seg.arc_src = rec.src;
      seg.arc_dst = rec.dst;
      seg.family = rec.family;
      seg.transition = reference.Machine().OutputSymbols().Symbol(arc.olabel);
      segments.push_back(std::move(seg));
      open = true;
      open_label = arc.ilabel;
    } else if (!(open && arc.ilabel == open_label)) {
      open = false;
    }
    ++frame;
    if (open) segments.back().frame_end = frame;
  }
  return segments;
}

std::vector<PathSegment> SegmentTimestamps(std::vector<PathSegment> segments,
                                           double frame_shift_ms) {
  for (auto& s : segments) {
    s.time_begin_ms = s.frame_begin * frame_shift_ms;
    s.time_end_ms = s.frame_end * frame_shift_ms;
  }
  return segments;
}

std::vector<std::pair<int, int>> SilenceSpans(
    const std::vector<PathSegment>& segments, int num_frames) {
  std::vector<std::pair<int, int>> out;
  int cursor = 0;
  for (const auto& s : segments) {
    if (s.frame_begin > cursor) out.emplace_back(cursor, s.frame_begin);
    cursor = std::max(cursor, s.frame_end);
  }
  if (num_frames > cursor) out.emplace_back(cursor, num_frames);
  return out;
}

}  // namespace dysfst
