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

#include "dysfst/experiments.h"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "dysfst/error.h"

namespace dysfst {

void ParallelFor(std::size_t n, int jobs,
                 const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

const char* CorpusKindName(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::kFluent: return "fluent";
    case CorpusKind::kRepetition: return "rep";
    case CorpusKind::kDeletion: return "del";
    case CorpusKind::kInsertion: return "ins";
  }
  return "";
}

std::optional<CorpusKind> ParseCorpusKind(std::string_view name) {
  for (CorpusKind k : {CorpusKind::kFluent, CorpusKind::kRepetition,
                       CorpusKind::kDeletion, CorpusKind::kInsertion}) {
    if (name == CorpusKindName(k)) return k;
  }
  return std::nullopt;
}

namespace {

int Draw(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

SyntheticSpec RandomSpec(const CorpusOptions& o, const Lexicon& lexicon,
                         std::mt19937_64& rng) {
  SyntheticSpec spec;
  spec.frames_per_phoneme = o.frames_per_phoneme;
  spec.blank_frames = o.blank_frames;
  spec.confidence = o.confidence;
  const auto& phonemes = lexicon.Phonemes();
  const int n = static_cast<int>(phonemes.size());
  const int len = Draw(rng, o.min_length, o.max_length);
  while (static_cast<int>(spec.reference.size()) < len) {
    const std::string& p = phonemes[Draw(rng, 0, n - 1)];
    if (spec.reference.empty() || spec.reference.back() != p) {
      spec.reference.push_back(p);
    }
  }
  switch (o.kind) {
    case CorpusKind::kFluent:
      break;
    case CorpusKind::kRepetition: {
      const int span = std::min(Draw(rng, 2, 3), len);
      const int pos = Draw(rng, 0, len - span);
      spec.plan.push_back(PlanEdit::Repeat(pos, span, Draw(rng, 1, 2)));
      break;
    }
    case CorpusKind::kDeletion:
      spec.plan.push_back(PlanEdit::Delete(Draw(rng, 1, len - 2)));
      break;
    case CorpusKind::kInsertion:
      spec.plan.push_back(PlanEdit::InsertBackjump(Draw(rng, 1, len - 1)));
      break;
  }
  return spec;
}

std::string FormatNumber(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<CorpusItem> GenerateCorpus(const CorpusOptions& options,
                                       const Lexicon& lexicon, int jobs) {
  if (options.min_length < 3 || options.max_length < options.min_length) {
    throw ConfigError("corpus: need 3 <= min_length <= max_length");
  }
  std::vector<CorpusItem> corpus(options.size);
  ParallelFor(options.size, jobs, [&](std::size_t i) {
    std::mt19937_64 rng(options.seed ^ static_cast<std::uint64_t>(i));
    CorpusItem& item = corpus[i];
    char id[32];
    std::snprintf(id, sizeof id, "%s-%04zu", CorpusKindName(options.kind), i);
    item.id = id;
    item.spec = RandomSpec(options, lexicon, rng);
    item.utterance = Synthesize(item.spec, lexicon);
  });
  return corpus;
}

PhonemeSequence UtteranceOutcome::Phonemes() const {
  return transcription ? transcription->phonemes : PhonemeSequence{};
}

CorpusEvaluation EvaluateCorpus(const Decoder& decoder,
                                const std::vector<CorpusItem>& corpus,
                                const SimilarityMatrix& similarity,
                                const EvaluationOptions& options,
                                const std::vector<EmissionMatrix>* emissions) {
  if (corpus.empty()) throw InputError("evaluate: empty corpus");
  if (emissions && emissions->size() != corpus.size()) {
    throw InputError("evaluate: emission count does not match corpus");
  }
  CorpusEvaluation ev;
  ev.detection = DetectionAccumulator(options.level);
  ev.outcomes.resize(corpus.size());
  ParallelFor(corpus.size(), options.jobs, [&](std::size_t i) {
    const CorpusItem& item = corpus[i];
    const EmissionMatrix& em =
        emissions ? (*emissions)[i] : item.utterance.emission;
    DecodeResult r =
        decoder.Decode(em, item.spec.reference, options.severity, options.fst);
    UtteranceOutcome& out = ev.outcomes[i];
    out.warnings = std::move(r.warnings);
    if (r.transcription) {
      out.detection =
          DetectDysfluency(r.transcription->segments, item.spec.reference);
      out.transcription = std::move(r.transcription);
    }
  });

  ErrorRateAccumulator rates(similarity);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const UtteranceOutcome& out = ev.outcomes[i];
    const GoldLabels& gold = corpus[i].utterance.gold;
    rates.Add(gold.SpokenPhonemes(), out.Phonemes());
    ev.detection.Add(gold.Events(), EventsFromDetection(out.detection));
    if (!out.transcription) {
      ++ev.no_path;
      continue;
    }
    for (const auto& s : out.transcription->segments) {
      ev.non_forward_segments += s.family != ArcFamily::kForward;
    }
    for (const auto& a : out.detection.annotations) {
      ev.non_normal_annotations += a.type != DysfluencyType::kNormal;
    }
  }
  ev.per = rates.Per();
  ev.wper = rates.Wper();
  ev.utterances = corpus.size();
  return ev;
}

namespace {

ExperimentRow RowFrom(double x, const CorpusEvaluation& ev) {
  ExperimentRow row;
  row.x = x;
  row.per = ev.per;
  row.wper = ev.wper;
  row.rep_acc = ev.detection.Accuracy(DysfluencyType::kRepetition);
  row.del_acc = ev.detection.Accuracy(DysfluencyType::kDeletion);
  row.ins_acc = ev.detection.Accuracy(DysfluencyType::kInsertion);
  row.repetitions_detected = ev.detection.Tally(DysfluencyType::kRepetition).hyp;
  row.non_normal_annotations = ev.non_normal_annotations;
  row.no_path = ev.no_path;
  return row;
}

}  // namespace

std::vector<ExperimentRow> SweepBeta(const Decoder& decoder,
                                     const std::vector<CorpusItem>& corpus,
                                     const std::vector<double>& betas,
                                     const SimilarityMatrix& similarity,
                                     const EvaluationOptions& options) {
  std::vector<ExperimentRow> rows;
  for (double beta : betas) {
    EvaluationOptions o = options;
    o.severity = SeverityConfig(beta);
    ExperimentRow row =
        RowFrom(beta, EvaluateCorpus(decoder, corpus, similarity, o));
    row.reference_linear = true;
    for (const CorpusItem& item : corpus) {
      row.reference_linear =
          row.reference_linear &&
          BuildReferenceFst(item.spec.reference, decoder.GetLexicon(),
                            o.severity, o.fst)
              .IsLinear();
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ExperimentRow> NoiseTest(const Decoder& decoder,
                                     const std::vector<CorpusItem>& corpus,
                                     const std::vector<double>& sigmas,
                                     std::uint64_t noise_seed,
                                     const SimilarityMatrix& similarity,
                                     const EvaluationOptions& options) {
  std::vector<ExperimentRow> rows;
  for (double sigma : sigmas) {
    std::vector<EmissionMatrix> noisy(corpus.size());
    ParallelFor(corpus.size(), options.jobs, [&](std::size_t i) {
      noisy[i] = InjectNoise(corpus[i].utterance.emission, sigma,
                             noise_seed ^ static_cast<std::uint64_t>(i));
    });
    rows.push_back(RowFrom(
        sigma, EvaluateCorpus(decoder, corpus, similarity, options, &noisy)));
  }
  return rows;
}

std::string ExperimentCsv(const std::vector<ExperimentRow>& rows,
                          std::string_view x_name) {
  std::string out(x_name);
  out += ",per,wper,rep_acc,del_acc,ins_acc\n";
  auto opt = [](const std::optional<double>& v) {
    return v ? FormatNumber(*v) : std::string();
  };
  for (const auto& r : rows) {
    out += FormatNumber(r.x) + ',' + FormatNumber(r.per) + ',' +
           FormatNumber(r.wper) + ',' + opt(r.rep_acc) + ',' + opt(r.del_acc) +
           ',' + opt(r.ins_acc) + '\n';
  }
  return out;
}

}  // namespace dysfst
