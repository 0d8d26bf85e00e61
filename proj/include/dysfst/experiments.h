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

#ifndef DYSFST_EXPERIMENTS_H_
#define DYSFST_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dysfst/decoder.h"
#include "dysfst/detector.h"
#include "dysfst/metrics.h"
#include "dysfst/synthetic.h"

namespace dysfst {

// Runs fn(0) .. fn(n-1) on up to `jobs` threads. Each index must write only
// its own slot, so results never depend on scheduling. The first exception
// thrown is rethrown after all workers finish.
void ParallelFor(std::size_t n, int jobs,
                 const std::function<void(std::size_t)>& fn);

enum class CorpusKind { kFluent, kRepetition, kDeletion, kInsertion };

const char* CorpusKindName(CorpusKind kind);
std::optional<CorpusKind> ParseCorpusKind(std::string_view name);

struct CorpusOptions {
  CorpusKind kind = CorpusKind::kRepetition;
  std::size_t size = 100;
  std::uint64_t seed = 0;
  int min_length = 5;
  int max_length = 10;
  int frames_per_phoneme = 3;
  int blank_frames = 1;
  double confidence = 0.9;
};

struct CorpusItem {
  std::string id;
  SyntheticSpec spec;
  SyntheticUtterance utterance;
};

// Utterance i draws from its own generator seeded with seed ^ i; references
// avoid adjacent duplicate phonemes. Repetition plans repeat a span of two or
// three phonemes once or twice; deletion plans drop one interior phoneme;
// insertion plans add one backjump.
std::vector<CorpusItem> GenerateCorpus(const CorpusOptions& options,
                                       const Lexicon& lexicon, int jobs = 1);

struct UtteranceOutcome {
  std::optional<Transcription> transcription;
  DetectionResult detection;
  std::vector<std::string> warnings;

  PhonemeSequence Phonemes() const;
};

struct CorpusEvaluation {
  double per = 0.0;
  double wper = 0.0;
  DetectionAccumulator detection;
  std::size_t utterances = 0;
  std::size_t no_path = 0;
  // Segments off forward arcs, and annotations other than normal.
  std::size_t non_forward_segments = 0;
  std::size_t non_normal_annotations = 0;
  std::vector<UtteranceOutcome> outcomes;
};

struct EvaluationOptions {
  SeverityConfig severity = SeverityConfig(2.5);
  ReferenceFstOptions fst;
  AccuracyLevel level = AccuracyLevel::kCount;
  int jobs = 1;
};

// Decodes every item against its reference and scores the hypothesis
// against the gold spoken sequence. An utterance without a path scores as an
// empty hypothesis. `emissions` overrides the items' clean emissions when
// non-null.
CorpusEvaluation EvaluateCorpus(const Decoder& decoder,
                                const std::vector<CorpusItem>& corpus,
                                const SimilarityMatrix& similarity,
                                const EvaluationOptions& options,
                                const std::vector<EmissionMatrix>* emissions =
                                    nullptr);

struct ExperimentRow {
  double x = 0.0;  // beta or sigma
  double per = 0.0;
  double wper = 0.0;
  std::optional<double> rep_acc;
  std::optional<double> del_acc;
  std::optional<double> ins_acc;
  std::size_t repetitions_detected = 0;
  std::size_t non_normal_annotations = 0;
  std::size_t no_path = 0;
  bool reference_linear = false;  // every reference FST was linear
};

std::vector<ExperimentRow> SweepBeta(const Decoder& decoder,
                                     const std::vector<CorpusItem>& corpus,
                                     const std::vector<double>& betas,
                                     const SimilarityMatrix& similarity,
                                     const EvaluationOptions& options);

// Utterance i at every sigma uses noise seed noise_seed ^ i.
std::vector<ExperimentRow> NoiseTest(const Decoder& decoder,
                                     const std::vector<CorpusItem>& corpus,
                                     const std::vector<double>& sigmas,
                                     std::uint64_t noise_seed,
                                     const SimilarityMatrix& similarity,
                                     const EvaluationOptions& options);

// Columns: <x_name>,per,wper,rep_acc,del_acc,ins_acc; an accuracy without
// gold events is left empty.
std::string ExperimentCsv(const std::vector<ExperimentRow>& rows,
                          std::string_view x_name);

}  // namespace dysfst

#endif  // DYSFST_EXPERIMENTS_H_
