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

// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and
// runtime limits are fixed here.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "dysfst/compose.h"
#include "dysfst/decoder.h"
#include "dysfst/experiments.h"
#include "dysfst/metrics.h"
#include "dysfst/reference_fst.h"
#include "dysfst/similarity.h"
#include "oracles.h"

namespace dysfst {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kCorpusSeed = 20250101;
constexpr std::uint64_t kNoiseSeed = 77;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

template <typename F>
void Criterion(const char* name, double limit_s, F&& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.Fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) {
    o.Fail("runtime " + std::to_string(secs) + " s over limit");
  }
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << (o.pass ? "PASS " : "FAIL ") << name << " [" << timing;
  if (limit_s > 0) std::cout << ", limit " << limit_s << " s";
  std::cout << "] " << o.detail << std::endl;
  failures += !o.pass;
}

void Info(const std::string& text) { std::cout << "INFO " << text << std::endl; }

std::string Num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::vector<CorpusItem> Corpus(CorpusKind kind, std::size_t size) {
  CorpusOptions o;
  o.kind = kind;
  o.size = size;
  o.seed = kCorpusSeed;
  o.confidence = 0.9;
  return GenerateCorpus(o, Lexicon::Default());
}

void RepetitionCountAccuracy(Outcome& o) {
  Decoder dec(Lexicon::Default());
  auto corpus = Corpus(CorpusKind::kRepetition, 100);
  EvaluationOptions eo;
  eo.severity = SeverityConfig(2.5);
  CorpusEvaluation ev = EvaluateCorpus(dec, corpus, DefaultSimilarity(), eo);
  const TypeTally& t = ev.detection.Tally(DysfluencyType::kRepetition);
  auto acc = ev.detection.Accuracy(DysfluencyType::kRepetition);
  o.detail = "repetition accuracy " + (acc ? Num(*acc) : "n/a") + " (" +
             std::to_string(t.matched) + "/" + std::to_string(t.gold) +
             " gold, " + std::to_string(t.hyp) + " detected)";
  if (!acc || *acc != 1.0) o.Fail(o.detail);
}

void ShortestPathOracle(Outcome& o) {
  Lexicon lex({"A", "B", "C"});
  Decoder dec(lex);
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> tlen(0, 6), slen(1, 3), ph(0, 2);
  std::normal_distribution<double> logit(0.0, 2.0);
  std::uniform_real_distribution<double> beta(0.5, 6.0);
  int checked = 0;
  for (int it = 0; it < 1000; ++it) {
    const int tf = tlen(rng);
    std::vector<float> v;
    for (int t = 0; t < tf; ++t) {
      double row[4], z = 0;
      for (double& x : row) z += std::exp(x = logit(rng));
      for (double x : row) v.push_back(static_cast<float>(x - std::log(z)));
    }
    EmissionMatrix em(tf, 4, v);
    PhonemeSequence ref;
    for (int k = slen(rng); k > 0; --k) ref.push_back(lex.Phonemes()[ph(rng)]);
    SeverityConfig cfg(beta(rng));
    ReferenceFstOptions fo;
    fo.strict_final = it % 4 == 3;
    DecodingGraphs g = dec.BuildGraphs(em, ref, cfg, fo);
    DecodeResult r = dec.Decode(em, ref, cfg, fo);
    double enum_min = std::numeric_limits<double>::infinity();
    ForEachPath(g.lattice, static_cast<std::size_t>(tf), [&](const Path& p) {
      enum_min = std::min(enum_min, p.total_weight.Value());
    });
    const double got = r.NoPath() ? std::numeric_limits<double>::infinity()
                                  : r.transcription->total_weight.Value();
    if (got != enum_min) {
      o.Fail("instance " + std::to_string(it) + ": decode " + Num(got) +
             " != enumeration " + Num(enum_min));
      return;
    }
    const double brute = testing::FrameStringMinimum(em, g.reference.Machine());
    if (!(std::isinf(brute) && std::isinf(got)) && !(std::abs(brute - got) <= 1e-9)) {
      o.Fail("instance " + std::to_string(it) + ": frame-string oracle " +
             Num(brute) + " vs " + Num(got));
      return;
    }
    ++checked;
  }
  o.detail = std::to_string(checked) +
             " instances (T<=6, S<=3): decode weight == enumeration minimum "
             "bit-exact; frame-string brute force within 1e-9";
}

void CompositionOracle(Outcome& o) {
  auto syms = [](std::vector<std::string> s) {
    return std::make_shared<const SymbolTable>(s);
  };
  auto x = syms({"x1", "x2"}), y = syms({"y1", "y2"}), z = syms({"z1", "z2"});
  std::mt19937_64 rng(9001);
  int pairs = 0, attempts = 0;
  std::size_t entries = 0;
  while (pairs < 200) {
    if (++attempts > 10000) {
      o.Fail("could not draw 200 usable pairs");
      return;
    }
    testing::RandomMachineOptions opt;
    opt.num_states = 3 + attempts % 3;
    opt.num_arcs = 4 + attempts % 5;
    opt.epsilon_in = opt.epsilon_out = 0.3;
    Wfst left = testing::RandomMachine(rng, x, y, opt);
    Wfst right = testing::RandomMachine(rng, y, z, opt);
    if (!left.HasStartAndAccept() || !right.HasStartAndAccept()) continue;
    // Acyclic machines: length 8 covers every path of these sizes.
    auto want = testing::JoinRelations(testing::RelationOf(left, 8),
                                       testing::RelationOf(right, 8), 4);
    auto got = testing::RelationOf(Compose(left, right), 4);
    if (auto m = testing::RelationMismatch(got, want, 1e-12, true)) {
      o.Fail("pair " + std::to_string(pairs) + ": " + *m);
      return;
    }
    entries += want.size();
    ++pairs;
  }
  o.detail = "200 random pairs (" + std::to_string(entries) +
             " (input, output) entries): path sets, path counts and weights (1e-12) "
             "match the brute-force join, input length <= 4";
}

void FluentSoundness(Outcome& o) {
  Decoder dec(Lexicon::Default());
  auto corpus = Corpus(CorpusKind::kFluent, 100);
  for (double beta : {1.0, 2.0, 2.5, 4.0}) {
    EvaluationOptions eo;
    eo.severity = SeverityConfig(beta);
    CorpusEvaluation ev = EvaluateCorpus(dec, corpus, DefaultSimilarity(), eo);
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      wrong += ev.outcomes[i].Phonemes() != corpus[i].spec.reference;
    }
    if (ev.no_path || ev.non_forward_segments || ev.non_normal_annotations ||
        wrong) {
      o.Fail("beta " + Num(beta) + ": " + std::to_string(ev.non_forward_segments) +
             " non-forward segments, " + std::to_string(ev.non_normal_annotations) +
             " non-normal annotations, " + std::to_string(wrong) +
             " wrong transcriptions, " + std::to_string(ev.no_path) + " no path");
      return;
    }
  }
  o.detail = "100 utterances x beta {1,2,2.5,4}: all forward, all normal";
}

void WeightFormulas(Outcome& o) {
  // Independent 40-digit evaluation of alpha = 1 - 10^-b, err0 = 10^-b,
  // err(x) = err0 / sqrt(2 pi) * exp(-x^2 / 2).
  struct Ref {
    double beta, alpha, err0, err[3], neglog_alpha, neglog_err[3];
  };
  const Ref refs[] = {
      {1, 0.9, 0.1,
       {0.02419707245191433498, 0.0053990966513188051951,
        0.00044318484119380071756},
       0.10536051565782630123,
       {3.7215236261987184258, 5.2215236261987184258, 7.7215236261987184258}},
      {2, 0.99, 0.01,
       {0.002419707245191433498, 0.00053990966513188051951,
        0.000044318484119380071756},
       0.010050335853501441184,
       {6.0241087191927641098, 7.5241087191927641098, 10.02410871919276411}},
      {3, 0.999, 0.001,
       {0.0002419707245191433498, 0.000053990966513188051951,
        4.4318484119380071756e-6},
       0.0010005003335835335001,
       {8.3266938121868097938, 9.8266938121868097938, 12.326693812186809794}},
  };
  const double tol = 1e-12;
  double worst = 0.0;
  auto check = [&](double got, double want, const std::string& what) {
    const double d = std::abs(got - want);
    worst = std::max(worst, d);
    if (!(d <= tol)) o.Fail(what + ": " + Num(got) + " vs " + Num(want));
  };
  const Lexicon& lex = Lexicon::Default();
  for (const Ref& r : refs) {
    SeverityConfig c(r.beta);
    const std::string b = "beta " + Num(r.beta);
    check(c.Alpha(), r.alpha, b + " alpha");
    check(c.Err0(), r.err0, b + " err0");
    // Arc weights in a built reference machine: forward, then by distance.
    ReferenceFst f = BuildReferenceFst({"N", "AA", "T", "S", "IY"}, lex, c);
    for (int x = 1; x <= 3; ++x) {
      check(c.Err(x), r.err[x - 1], b + " err(" + std::to_string(x) + ")");
    }
    for (StateId s = 0; s < f.Machine().NumStates(); ++s) {
      for (const Arc& a : f.Machine().Arcs(s)) {
        const auto& rec = f.Decode(a.olabel);
        if (rec.family == ArcFamily::kForward) {
          check(a.weight.Value(), r.neglog_alpha, b + " forward arc");
        } else if (rec.distance <= 3) {
          check(a.weight.Value(), r.neglog_err[rec.distance - 1],
                b + " arc distance " + std::to_string(rec.distance));
        }
      }
    }
  }
  if (o.pass) {
    o.detail = "alpha, err0, err(1..3) and arc weights for beta {1,2,3}; max "
               "abs error " + Num(worst) + " <= 1e-12";
  }
}

void WperProperties(Outcome& o) {
  const SimilarityMatrix& sim = DefaultSimilarity();
  const auto& all = sim.Phonemes();
  const std::vector<std::string> confusable = {"B", "P", "M", "AA", "AO", "AH"};
  std::mt19937_64 rng(555);
  auto draw = [&](const std::vector<std::string>& alpha, int lo, int hi) {
    std::uniform_int_distribution<int> len(lo, hi);
    std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
    PhonemeSequence s;
    for (int k = len(rng); k > 0; --k) s.push_back(alpha[pick(rng)]);
    return s;
  };
  auto unit = [](const std::string&, const std::string&) { return 1.0; };
  auto weighted = [&](const std::string& a, const std::string& b) {
    return 1.0 - sim.Similarity(a, b);
  };
  double worst = 0.0;
  for (int it = 0; it < 500; ++it) {
    const auto& alpha = it % 2 ? all : confusable;
    PhonemeSequence ref = draw(alpha, 1, 5), hyp = draw(alpha, 0, 5);
    const double n = static_cast<double>(ref.size());
    const double per = Per(ref, hyp), wper = Wper(ref, hyp, sim);
    if (Wper(ref, ref, sim) != 0.0 || Per(ref, ref) != 0.0) {
      o.Fail("pair " + std::to_string(it) + ": self error rate nonzero");
      return;
    }
    if (!(wper >= 0.0 && wper <= per)) {
      o.Fail("pair " + std::to_string(it) + ": wper " + Num(wper) + " > per " +
             Num(per));
      return;
    }
    const double ex_per = testing::ExhaustiveEditCost(ref, 0, hyp, 0, unit) / n;
    const double ex_wper =
        testing::ExhaustiveEditCost(ref, 0, hyp, 0, weighted) / n;
    worst = std::max(worst, std::abs(wper - ex_wper));
    if (per != ex_per) {
      o.Fail("pair " + std::to_string(it) + ": per DP " + Num(per) +
             " != exhaustive " + Num(ex_per));
      return;
    }
    if (!(std::abs(wper - ex_wper) <= 1e-12)) {
      o.Fail("pair " + std::to_string(it) + ": wper DP " + Num(wper) +
             " vs exhaustive " + Num(ex_wper));
      return;
    }
  }
  o.detail = "500 pairs, length <= 5: self rates 0, 0 <= wper <= per, per DP "
             "exact, wper DP within " + Num(worst) + " of exhaustive";
}

void BetaAblation(Outcome& o) {
  Decoder dec(Lexicon::Default());
  auto corpus = Corpus(CorpusKind::kRepetition, 100);
  EvaluationOptions eo;
  auto rows = SweepBeta(dec, corpus, {1, 2, 3, 4, 6, 400}, DefaultSimilarity(), eo);
  double lo = 1e300, hi = -1e300;
  std::string table;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    lo = std::min(lo, rows[i].wper);
    hi = std::max(hi, rows[i].wper);
    table += " " + Num(rows[i].x) + ":" + Num(100 * rows[i].wper) + "%";
  }
  const ExperimentRow& under = rows.back();
  const double spread_pp = 100 * (hi - lo);
  o.detail = "simu-rep WPER" + table + "; spread " + Num(spread_pp) +
             " pp; beta 400: " + std::to_string(under.repetitions_detected) +
             " repetitions, linear=" + (under.reference_linear ? "yes" : "no") +
             ", WPER " + Num(100 * under.wper) + "%";
  if (!(spread_pp <= 1.0)) o.Fail(o.detail);
  if (under.repetitions_detected != 0 || !under.reference_linear) o.Fail(o.detail);

  // Other corpora are reported only.
  for (CorpusKind kind : {CorpusKind::kDeletion, CorpusKind::kInsertion}) {
    auto other = Corpus(kind, 100);
    auto r = SweepBeta(dec, other, {1, 2, 3, 4, 6}, DefaultSimilarity(), eo);
    std::string line = std::string("beta sweep on ") + CorpusKindName(kind) +
                       " corpus, WPER:";
    for (const auto& row : r) line += " " + Num(row.x) + ":" + Num(100 * row.wper) + "%";
    Info(line);
  }
}

void NoiseTrend(Outcome& o) {
  Decoder dec(Lexicon::Default());
  auto corpus = Corpus(CorpusKind::kRepetition, 100);
  EvaluationOptions eo;
  auto rows = NoiseTest(dec, corpus, {0, 0.1, 1, 10}, kNoiseSeed,
                        DefaultSimilarity(), eo);
  o.detail = "simu-rep WPER by sigma:";
  for (const auto& r : rows) o.detail += " " + Num(r.x) + ":" + Num(100 * r.wper) + "%";
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].wper < rows[i - 1].wper) o.Fail(o.detail + " (decreases)");
  }
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void Determinism(Outcome& o) {
  const fs::path root = fs::temp_directory_path() /
                        ("dysfst_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const std::string bin = DYSFST_CLI_BINARY;
  // Each run writes into its own directory.
  std::vector<std::string> outputs[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = root / ("run" + std::to_string(run));
    fs::create_directories(dir);
    const std::string d = dir.string();
    const std::string jobs = run == 0 ? "1" : "3";
    const std::vector<std::string> cmds = {
        "simulate --kind rep --size 12 --seed 5 -o " + d + "/corpus --jobs " + jobs,
        "decode --manifest " + d + "/corpus/manifest.jsonl -o " + d +
            "/hyp.jsonl --jobs " + jobs,
        "decode " + d + "/corpus/rep-0003.dwem --phonemes 'N AA T' -o " +
            d + "/single.json",
        "eval " + d + "/hyp.jsonl " + d + "/corpus/manifest.jsonl -o " + d +
            "/metrics.json --csv " + d + "/metrics.csv",
        "sweep-beta --kind rep --size 12 --seed 5 --betas 1,2.5,400 -o " + d +
            "/sweep.csv --jobs " + jobs,
        "noise-test --kind rep --size 12 --seed 5 -o " + d + "/noise.csv --jobs " + jobs,
        "export-similarity -o " + d + "/similarity.csv",
        "--version > " + d + "/version.txt",
    };
    for (const auto& c : cmds) {
      const std::string line = "'" + bin + "' " + c + " 2>/dev/null";
      const int rc = std::system(line.c_str());
      if (rc != 0) {
        o.Fail("command failed (" + std::to_string(rc) + "): " + c);
        fs::remove_all(root);
        return;
      }
    }
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (entry.is_regular_file()) {
        outputs[run].push_back(fs::relative(entry.path(), dir).string() + "\n" +
                               Slurp(entry.path()));
      }
    }
    std::sort(outputs[run].begin(), outputs[run].end());
  }
  fs::remove_all(root);
  if (outputs[0].size() != outputs[1].size()) {
    o.Fail("runs produced different file sets");
    return;
  }
  for (std::size_t i = 0; i < outputs[0].size(); ++i) {
    if (outputs[0][i] != outputs[1][i]) {
      o.Fail("output differs: " + outputs[0][i].substr(0, outputs[0][i].find('\n')));
      return;
    }
  }
  o.detail = std::to_string(outputs[0].size()) +
             " report files byte-identical across two runs (jobs 1 vs 3) of "
             "simulate, decode, eval, sweep-beta, noise-test, export-similarity, "
             "--version";
}

}  // namespace
}  // namespace dysfst

int main() {
  using namespace dysfst;
  Criterion("repetition-count-accuracy", 10, RepetitionCountAccuracy);
  Criterion("shortest-path-oracle", 60, ShortestPathOracle);
  Criterion("composition-oracle", 0, CompositionOracle);
  Criterion("fluent-soundness", 0, FluentSoundness);
  Criterion("weight-formulas", 0, WeightFormulas);
  Criterion("wper-properties", 0, WperProperties);
  Criterion("beta-ablation", 60, BetaAblation);
  Criterion("noise-trend", 60, NoiseTrend);
  Criterion("determinism", 0, Determinism);
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " failing"
            << std::endl;
  return failures ? 1 : 0;
}
