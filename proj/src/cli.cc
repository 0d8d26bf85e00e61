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

#include "dysfst/cli.h"

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "dysfst/error.h"
#include "dysfst/experiments.h"
#include "dysfst/pronouncing_dictionary.h"
#include "dysfst/report.h"
#include "dysfst/similarity.h"
#include "json.hpp"

#ifndef DYSFST_DEFAULT_DICTIONARY
#define DYSFST_DEFAULT_DICTIONARY ""
#endif

namespace dysfst {
namespace {

constexpr const char* kVersion = "0.1.0";

struct Config {
  double beta = 2.5;
  std::string lexicon_path;
  std::string dictionary_path = DYSFST_DEFAULT_DICTIONARY;
  std::string similarity_path;
  bool strict_final = false;
  bool free_insertion_arcs = false;
  bool allow_unnormalized = false;
  std::string output_path;
  std::uint64_t seed = 0;
  int jobs = 1;
};

std::string Sha256Hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

Lexicon LoadLexicon(const Config& c) {
  return c.lexicon_path.empty() ? Lexicon::Default()
                                : Lexicon::FromFile(c.lexicon_path);
}

SimilarityMatrix LoadSimilarity(const Config& c) {
  return c.similarity_path.empty() ? DefaultSimilarity()
                                   : SimilarityMatrix::FromFile(c.similarity_path);
}

ReferenceFstOptions FstOptions(const Config& c) {
  ReferenceFstOptions o;
  o.strict_final = c.strict_final;
  o.free_insertion_arcs = c.free_insertion_arcs;
  return o;
}

std::vector<double> ParseList(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + ": bad number '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

void Emit(const Config& c, const std::string& text, std::ostream& out) {
  if (c.output_path.empty()) {
    out << text;
  } else {
    WriteFileAtomic(c.output_path, text);
  }
}

void AddCommon(CLI::App* cmd, Config& c, bool decoding) {
  if (decoding) {
    cmd->add_option("--beta", c.beta, "severity parameter beta")
        ->envname("DWFST_BETA")
        ->capture_default_str();
    cmd->add_flag("--strict-final", c.strict_final,
                  "accept only after the whole reference")
        ->envname("DWFST_STRICT_FINAL");
    cmd->add_flag("--free-insertion-arcs", c.free_insertion_arcs,
                  "add experimental self-loops for non-reference phonemes")
        ->envname("DWFST_FREE_INSERTION_ARCS");
    cmd->add_option("--jobs", c.jobs, "parallel utterances")
        ->envname("DWFST_JOBS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  cmd->add_option("--lexicon", c.lexicon_path, "lexicon file")
      ->envname("DWFST_LEXICON")
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--output", c.output_path, "output file (default stdout)");
}

void AddSimilarity(CLI::App* cmd, Config& c) {
  cmd->add_option("--similarity", c.similarity_path, "similarity matrix CSV")
      ->envname("DWFST_SIMILARITY")
      ->check(CLI::ExistingFile);
}

void AddCorpusOptions(CLI::App* cmd, Config& c, CorpusOptions& o,
                      std::string& kind, std::string& manifest) {
  cmd->add_option("--kind", kind, "fluent, rep, del or ins")->capture_default_str();
  cmd->add_option("--size", o.size, "utterances")->capture_default_str();
  cmd->add_option("--seed", c.seed, "corpus seed")
      ->envname("DWFST_SEED")
      ->capture_default_str();
  cmd->add_option("--min-length", o.min_length)->capture_default_str();
  cmd->add_option("--max-length", o.max_length)->capture_default_str();
  cmd->add_option("--frames-per-phoneme", o.frames_per_phoneme)
      ->capture_default_str();
  cmd->add_option("--blank-frames", o.blank_frames)->capture_default_str();
  cmd->add_option("--confidence", o.confidence)->capture_default_str();
  if (cmd->get_name() != "simulate") {
    cmd->add_option("--manifest", manifest,
                    "use a corpus manifest instead of generating one")
        ->check(CLI::ExistingFile);
  }
}

CorpusOptions ResolveCorpus(CorpusOptions o, const Config& c,
                            const std::string& kind) {
  auto k = ParseCorpusKind(kind);
  if (!k) throw ConfigError("unknown corpus kind '" + kind + "'");
  o.kind = *k;
  o.seed = c.seed;
  return o;
}

std::vector<CorpusItem> CorpusFor(const CorpusOptions& o, const Config& c,
                                  const std::string& kind,
                                  const std::string& manifest,
                                  const Lexicon& lex) {
  if (!manifest.empty()) {
    auto corpus = LoadCorpus(manifest);
    if (!c.allow_unnormalized) {
      for (const auto& item : corpus) CheckLogNormalized(item.utterance.emission);
    }
    return corpus;
  }
  return GenerateCorpus(ResolveCorpus(o, c, kind), lex, c.jobs);
}

// ---- decode ----

struct DecodeArgs {
  std::string emission;
  std::string text;
  std::string phonemes;
  std::string phoneme_file;
  std::string manifest;
};

PhonemeSequence SplitPhonemes(const std::string& text) {
  PhonemeSequence out;
  std::istringstream in(text);
  std::string p;
  while (in >> p) out.push_back(p);
  return out;
}

PhonemeSequence ResolveReference(const DecodeArgs& a, const Config& c,
                                 const Lexicon& lex) {
  PhonemeSequence ref;
  if (!a.text.empty()) {
    if (c.dictionary_path.empty()) {
      throw ConfigError("--text needs a pronouncing dictionary (--dictionary)");
    }
    ref = TextToPhonemes(a.text,
                         PronouncingDictionary::FromFile(c.dictionary_path));
  } else if (!a.phonemes.empty()) {
    ref = SplitPhonemes(a.phonemes);
  } else {
    std::ifstream in(a.phoneme_file);
    if (!in) throw InputError("cannot open phoneme file " + a.phoneme_file);
    std::stringstream buf;
    buf << in.rdbuf();
    ref = SplitPhonemes(buf.str());
  }
  if (ref.empty()) throw InputError("empty reference");
  for (const auto& p : ref) lex.Id(p);
  return ref;
}

int CmdDecode(const DecodeArgs& a, const Config& c, std::ostream& out,
              std::ostream& err) {
  const Lexicon lex = LoadLexicon(c);
  const SeverityConfig severity(c.beta);
  const int sources = !a.text.empty() + !a.phonemes.empty() +
                      !a.phoneme_file.empty();
  Decoder decoder(lex);

  if (!a.manifest.empty()) {
    if (!a.emission.empty() || sources != 0) {
      throw ConfigError("--manifest takes references from the manifest");
    }
    auto corpus = LoadCorpus(a.manifest);
    for (const auto& item : corpus) {
      for (const auto& p : item.spec.reference) lex.Id(p);
      if (!c.allow_unnormalized) CheckLogNormalized(item.utterance.emission);
    }
    std::vector<std::string> lines(corpus.size());
    std::vector<char> no_path(corpus.size(), 0);
    ParallelFor(corpus.size(), c.jobs, [&](std::size_t i) {
      const CorpusItem& item = corpus[i];
      DecodeResult r = decoder.Decode(item.utterance.emission,
                                      item.spec.reference, severity,
                                      FstOptions(c));
      DetectionResult det;
      if (r.transcription) {
        det = DetectDysfluency(r.transcription->segments, item.spec.reference);
      }
      no_path[i] = r.NoPath();
      lines[i] =
          DetectionReportJson(item.id, item.spec.reference, severity, r, det, -1);
    });
    std::vector<std::size_t> order(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
      return corpus[x].id < corpus[y].id;
    });
    std::string text;
    std::size_t failures = 0;
    for (std::size_t i : order) {
      text += lines[i] + "\n";
      if (no_path[i]) {
        ++failures;
        err << corpus[i].id << ": no accepting path\n";
      }
    }
    Emit(c, text, out);
    return failures ? kExitNoPath : kExitOk;
  }

  if (a.emission.empty()) throw ConfigError("decode: emission file required");
  if (sources != 1) {
    throw ConfigError("decode: give exactly one of --text, --phonemes, "
                      "--phoneme-file");
  }
  const PhonemeSequence ref = ResolveReference(a, c, lex);
  EmissionMatrix em = ReadEmissionFile(a.emission);
  if (!c.allow_unnormalized) CheckLogNormalized(em);
  DecodeResult r = decoder.Decode(em, ref, severity, FstOptions(c));
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  if (r.NoPath()) {
    err << a.emission << ": no accepting path\n";
    return kExitNoPath;
  }
  DetectionResult det = DetectDysfluency(r.transcription->segments, ref);
  Emit(c, DetectionReportJson("", ref, severity, r, det, 2) + "\n", out);
  return kExitOk;
}

// ---- eval ----

std::vector<ParsedReport> ReadReports(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open hypothesis reports " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::vector<ParsedReport> out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return out;
  // A single report, or one report per line.
  if (nlohmann::json::accept(text)) {
    out.push_back(ParseDetectionReport(text, path));
    return out;
  }
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(
        ParseDetectionReport(line, path + ":" + std::to_string(lineno)));
  }
  return out;
}

int CmdEval(const std::string& hyp_path, const std::string& gold_path,
            bool position_level, const std::string& csv_path, const Config& c,
            std::ostream& out) {
  const SimilarityMatrix sim = LoadSimilarity(c);
  auto hyps = ReadReports(hyp_path);
  auto gold = ReadManifest(gold_path);
  if (gold.empty()) throw InputError(gold_path + ": empty corpus");
  std::map<std::string, const ParsedReport*> by_id;
  for (const auto& h : hyps) by_id[h.id] = &h;
  std::set<std::string> gold_ids;
  for (const auto& g : gold) gold_ids.insert(g.id);
  std::vector<std::string> unmatched;
  for (const auto& g : gold) {
    if (!by_id.count(g.id)) unmatched.push_back("gold:" + g.id);
  }
  for (const auto& h : hyps) {
    if (!gold_ids.count(h.id)) unmatched.push_back("hyp:" + h.id);
  }
  if (!unmatched.empty()) {
    std::string msg = "eval: unmatched utterance ids:";
    for (const auto& u : unmatched) msg += " " + u;
    throw InputError(msg);
  }
  MetricsReport m;
  m.detection = DetectionAccumulator(position_level ? AccuracyLevel::kPosition
                                                    : AccuracyLevel::kCount);
  m.similarity_provenance = sim.Provenance();
  ErrorRateAccumulator rates(sim);
  for (const auto& g : gold) {
    const ParsedReport& h = *by_id.at(g.id);
    PhonemeSequence spoken = g.gold.SpokenPhonemes();
    if (spoken.empty()) throw InputError(gold_path + ": " + g.id + " has no spoken phonemes");
    rates.Add(spoken, h.phonemes);
    m.detection.Add(g.gold.Events(), h.events);
  }
  m.utterances = rates.Utterances();
  m.per = rates.Per();
  m.wper = rates.Wper();
  const std::string json = MetricsJson(m);
  if (!csv_path.empty()) WriteFileAtomic(csv_path, MetricsCsv(m));
  Emit(c, json, out);
  return kExitOk;
}

// ---- simulate ----

int CmdSimulate(const CorpusOptions& o, const std::string& kind,
                const std::string& format, const Config& c) {
  if (c.output_path.empty()) throw ConfigError("simulate: -o DIR required");
  if (format != "dwem" && format != "json") {
    throw ConfigError("simulate: --format must be dwem or json");
  }
  const Lexicon lex = LoadLexicon(c);
  auto corpus = GenerateCorpus(ResolveCorpus(o, c, kind), lex, c.jobs);
  std::filesystem::create_directories(c.output_path);
  const std::filesystem::path dir(c.output_path);
  std::string manifest;
  for (const CorpusItem& item : corpus) {
    ManifestRecord r;
    r.id = item.id;
    r.emission = item.id + "." + format;
    r.reference = item.spec.reference;
    r.gold = item.utterance.gold;
    std::string body;
    if (format == "dwem") {
      std::ostringstream bin;
      WriteEmissionBinary(item.utterance.emission, bin);
      body = bin.str();
    } else {
      body = EmissionToJson(item.utterance.emission);
    }
    WriteFileAtomic((dir / r.emission).string(), body);
    manifest += ManifestLine(r) + "\n";
  }
  WriteFileAtomic((dir / "manifest.jsonl").string(), manifest);
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Dysfluency-aware WFST phoneme decoding", "dysfst"};
  app.require_subcommand(1);
  app.set_version_flag("--version", [] {
    std::string s = std::string("dysfst ") + kVersion + "\n";
    s += "lexicon sha256 " + Sha256Hex(Lexicon::Default().ToText()) + "\n";
    s += "similarity " + std::string(kDefaultSimilarityProvenance) +
         " sha256 " + Sha256Hex(DefaultSimilarity().ToCsv());
    return s;
  });

  Config c;
  DecodeArgs da;
  auto* decode = app.add_subcommand("decode", "decode emissions against a reference");
  decode->add_option("emission", da.emission, "emission file (DWEM1 or JSON)");
  decode->add_option("--text", da.text, "reference text");
  decode->add_option("--phonemes", da.phonemes, "space-separated reference phonemes");
  decode->add_option("--phoneme-file", da.phoneme_file, "file of reference phonemes");
  decode->add_option("--manifest", da.manifest, "batch: corpus manifest (JSON lines)");
  decode->add_option("--dictionary", c.dictionary_path, "pronouncing dictionary")
      ->envname("DWFST_DICTIONARY")
      ->capture_default_str();
  decode->add_flag("--allow-unnormalized", c.allow_unnormalized,
                   "skip the log-normalization check on input emissions");
  AddCommon(decode, c, true);

  std::string hyp_path, gold_path, csv_path;
  bool position_level = false;
  auto* eval = app.add_subcommand("eval", "score decode reports against a gold manifest");
  eval->add_option("hyp", hyp_path, "decode reports (JSON lines)")->required();
  eval->add_option("gold", gold_path, "gold manifest")->required();
  eval->add_flag("--position-level", position_level,
                 "match detections by reference position too");
  eval->add_option("--csv", csv_path, "also write metrics as CSV");
  AddSimilarity(eval, c);
  eval->add_option("-o,--output", c.output_path, "output file (default stdout)");

  CorpusOptions co;
  std::string kind = "rep", manifest, format = "dwem";
  auto* simulate = app.add_subcommand("simulate", "write a synthetic corpus");
  AddCorpusOptions(simulate, c, co, kind, manifest);
  simulate->add_option("--format", format, "dwem or json")->capture_default_str();
  simulate->add_option("--jobs", c.jobs)->envname("DWFST_JOBS")->check(CLI::PositiveNumber);
  simulate->add_option("--lexicon", c.lexicon_path, "lexicon file")
      ->envname("DWFST_LEXICON")
      ->check(CLI::ExistingFile);
  simulate->add_option("-o,--output", c.output_path, "output directory");

  std::string betas = "1,2,2.5,3,4,6,400";
  auto* sweep = app.add_subcommand("sweep-beta", "decode a corpus over several beta values");
  AddCorpusOptions(sweep, c, co, kind, manifest);
  sweep->add_option("--betas", betas, "comma-separated beta values")->capture_default_str();
  AddCommon(sweep, c, true);
  AddSimilarity(sweep, c);
  sweep->add_flag("--allow-unnormalized", c.allow_unnormalized);

  std::string sigmas = "0,0.1,1,10";
  std::uint64_t noise_seed = 1;
  auto* noise = app.add_subcommand("noise-test", "decode a corpus under Gaussian emission noise");
  AddCorpusOptions(noise, c, co, kind, manifest);
  noise->add_option("--sigmas", sigmas, "comma-separated noise levels")->capture_default_str();
  noise->add_option("--noise-seed", noise_seed)->capture_default_str();
  AddCommon(noise, c, true);
  AddSimilarity(noise, c);
  noise->add_flag("--allow-unnormalized", c.allow_unnormalized);

  auto* export_sim = app.add_subcommand("export-similarity", "write the similarity matrix CSV");
  AddSimilarity(export_sim, c);
  export_sim->add_option("-o,--output", c.output_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    if (decode->parsed()) return CmdDecode(da, c, out, err);
    if (eval->parsed()) {
      return CmdEval(hyp_path, gold_path, position_level, csv_path, c, out);
    }
    if (simulate->parsed()) return CmdSimulate(co, kind, format, c);
    if (export_sim->parsed()) {
      Emit(c, LoadSimilarity(c).ToCsv(), out);
      return kExitOk;
    }
    if (sweep->parsed() || noise->parsed()) {
      const Lexicon lex = LoadLexicon(c);
      const SimilarityMatrix sim = LoadSimilarity(c);
      auto corpus = CorpusFor(co, c, kind, manifest, lex);
      EvaluationOptions eo;
      eo.severity = SeverityConfig(c.beta);
      eo.fst = FstOptions(c);
      eo.jobs = c.jobs;
      Decoder decoder(lex);
      std::vector<ExperimentRow> rows;
      if (sweep->parsed()) {
        rows = SweepBeta(decoder, corpus, ParseList(betas, "--betas"), sim, eo);
        for (const auto& r : rows) {
          if (r.reference_linear && r.repetitions_detected != 0) {
            err << "warning: beta " << r.x
                << " gives linear references but repetitions were detected\n";
          }
        }
        Emit(c, ExperimentCsv(rows, "beta"), out);
      } else {
        rows = NoiseTest(decoder, corpus, ParseList(sigmas, "--sigmas"),
                         noise_seed, sim, eo);
        Emit(c, ExperimentCsv(rows, "sigma"), out);
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace dysfst
