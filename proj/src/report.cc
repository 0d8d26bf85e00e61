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

#include "dysfst/report.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dysfst/error.h"
#include "json.hpp"

namespace dysfst {

using nlohmann::ordered_json;

namespace {

ordered_json Span(int b, int e) { return ordered_json::array({b, e}); }

ordered_json SpanMs(double b, double e) { return ordered_json::array({b, e}); }

}  // namespace

std::string DetectionReportJson(const std::string& id,
                                const PhonemeSequence& reference,
                                const SeverityConfig& config,
                                const DecodeResult& result,
                                const DetectionResult& detection, int indent) {
  ordered_json j;
  if (!id.empty()) j["id"] = id;
  j["status"] = result.NoPath() ? "no_path" : "ok";
  j["reference"] = reference;
  j["beta"] = config.Beta();
  j["warnings"] = result.warnings;
  if (result.NoPath()) return j.dump(indent);

  const Transcription& tr = *result.transcription;
  j["total_weight"] = tr.total_weight.Value();
  j["num_frames"] = tr.num_frames;
  j["frame_shift_ms"] = tr.frame_shift_ms;
  j["phonemes"] = tr.phonemes;
  ordered_json segs = ordered_json::array();
  for (const auto& s : tr.segments) {
    ordered_json o;
    o["phoneme"] = s.phoneme;
    o["start_state"] = s.start_state;
    o["end_state"] = s.end_state;
    o["frames"] = Span(s.frame_begin, s.frame_end);
    o["time_ms"] = SpanMs(s.time_begin_ms, s.time_end_ms);
    o["transition"] = s.transition;
    o["arc"] = ArcFamilyName(s.family);
    segs.push_back(std::move(o));
  }
  j["segments"] = std::move(segs);
  ordered_json silence = ordered_json::array();
  for (auto [b, e] : SilenceSpans(tr.segments, tr.num_frames)) {
    ordered_json o;
    o["frames"] = Span(b, e);
    o["time_ms"] = SpanMs(b * tr.frame_shift_ms, e * tr.frame_shift_ms);
    silence.push_back(std::move(o));
  }
  j["silence"] = std::move(silence);

  ordered_json dys = ordered_json::array();
  for (const auto& a : detection.annotations) {
    ordered_json o;
    o["phoneme"] = a.phoneme;
    o["type"] = DysfluencyTypeName(a.type);
    o["start_state"] = a.segment.start_state;
    o["frames"] = Span(a.segment.frame_begin, a.segment.frame_end);
    dys.push_back(std::move(o));
  }
  j["dysfluency"] = std::move(dys);
  ordered_json del = ordered_json::array();
  for (const auto& d : detection.deleted) {
    ordered_json o;
    o["ref_position"] = d.ref_position;
    o["phoneme"] = d.phoneme;
    del.push_back(std::move(o));
  }
  j["deleted_reference_phonemes"] = std::move(del);
  DysfluencySummary sum = Summarize(detection);
  ordered_json s;
  s["normal"] = sum.normal;
  s["repetition"] = sum.repetition;
  s["insertion"] = sum.insertion;
  s["deletion"] = sum.deletion;
  s["deleted_phonemes"] = sum.deleted_phonemes;
  j["summary"] = std::move(s);
  return j.dump(indent);
}

namespace {

template <typename F>
auto Guard(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const ordered_json::exception& e) {
    throw InputError(where + ": " + e.what());
  }
}

DysfluencyType TypeField(const ordered_json& j, const std::string& where) {
  auto t = ParseDysfluencyType(j.at("type").get<std::string>());
  if (!t) throw InputError(where + ": unknown dysfluency type");
  return *t;
}

}  // namespace

ParsedReport ParseDetectionReport(const std::string& json_text,
                                  const std::string& where) {
  return Guard(where, [&] {
    ordered_json j = ordered_json::parse(json_text);
    ParsedReport r;
    r.id = j.value("id", "");
    r.no_path = j.at("status").get<std::string>() == "no_path";
    if (r.no_path) return r;
    for (const auto& s : j.at("segments")) {
      r.phonemes.push_back(s.at("phoneme").get<std::string>());
    }
    for (const auto& d : j.at("dysfluency")) {
      DysfluencyType t = TypeField(d, where);
      if (t == DysfluencyType::kRepetition || t == DysfluencyType::kInsertion) {
        r.events.push_back({t, d.at("start_state").get<int>()});
      }
    }
    for (const auto& d : j.at("deleted_reference_phonemes")) {
      r.events.push_back(
          {DysfluencyType::kDeletion, d.at("ref_position").get<int>()});
    }
    return r;
  });
}

std::string ManifestLine(const ManifestRecord& record) {
  ordered_json j;
  j["id"] = record.id;
  j["emission"] = record.emission;
  j["reference"] = record.reference;
  j["spoken"] = record.gold.SpokenPhonemes();
  ordered_json ann = ordered_json::array();
  for (const auto& g : record.gold.spoken) {
    ordered_json o;
    o["phoneme"] = g.phoneme;
    o["type"] = DysfluencyTypeName(g.type);
    o["ref_position"] = g.ref_position;
    ann.push_back(std::move(o));
  }
  j["annotations"] = std::move(ann);
  ordered_json del = ordered_json::array();
  for (const auto& d : record.gold.deleted) {
    ordered_json o;
    o["ref_position"] = d.ref_position;
    o["phoneme"] = d.phoneme;
    del.push_back(std::move(o));
  }
  j["deleted"] = std::move(del);
  return j.dump();
}

std::vector<ManifestRecord> ReadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path);
  std::vector<ManifestRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    out.push_back(Guard(where, [&] {
      ordered_json j = ordered_json::parse(line);
      ManifestRecord r;
      r.id = j.at("id").get<std::string>();
      r.emission = j.at("emission").get<std::string>();
      r.reference = j.at("reference").get<PhonemeSequence>();
      for (const auto& a : j.value("annotations", ordered_json::array())) {
        r.gold.spoken.push_back({a.at("phoneme").get<std::string>(),
                                 TypeField(a, where),
                                 a.at("ref_position").get<int>()});
      }
      for (const auto& d : j.value("deleted", ordered_json::array())) {
        r.gold.deleted.push_back(
            {d.at("ref_position").get<int>(), d.at("phoneme").get<std::string>()});
      }
      if (r.reference.empty()) throw InputError(where + ": empty reference");
      return r;
    }));
  }
  return out;
}

std::vector<CorpusItem> LoadCorpus(const std::string& manifest_path) {
  const std::filesystem::path dir =
      std::filesystem::path(manifest_path).parent_path();
  std::vector<CorpusItem> corpus;
  for (ManifestRecord& r : ReadManifest(manifest_path)) {
    CorpusItem item;
    item.id = r.id;
    item.spec.reference = r.reference;
    item.utterance.emission = ReadEmissionFile((dir / r.emission).string());
    item.utterance.gold = std::move(r.gold);
    corpus.push_back(std::move(item));
  }
  if (corpus.empty()) throw InputError(manifest_path + ": empty corpus");
  return corpus;
}

namespace {

ordered_json Accuracy(const DetectionAccumulator& d, DysfluencyType t) {
  auto a = d.Accuracy(t);
  return a ? ordered_json(*a) : ordered_json(nullptr);
}

}  // namespace

std::string MetricsJson(const MetricsReport& m) {
  ordered_json j;
  j["accuracy_definition"] = AccuracyDefinition(m.detection.Level());
  j["error_rate_definition"] =
      "corpus total edit cost over total gold spoken length";
  j["similarity"] = m.similarity_provenance;
  j["utterances"] = m.utterances;
  j["per"] = m.per;
  j["wper"] = m.wper;
  ordered_json det;
  for (DysfluencyType t : kScoredTypes) {
    det[DysfluencyTypeName(t)] = Accuracy(m.detection, t);
  }
  j["detection"] = std::move(det);
  ordered_json counts;
  for (DysfluencyType t : kScoredTypes) {
    const TypeTally& tally = m.detection.Tally(t);
    ordered_json c;
    c["gold"] = tally.gold;
    c["hyp"] = tally.hyp;
    c["matched"] = tally.matched;
    counts[DysfluencyTypeName(t)] = std::move(c);
  }
  j["counts"] = std::move(counts);
  return j.dump(2) + "\n";
}

std::string MetricsCsv(const MetricsReport& m) {
  std::ostringstream out;
  out << "# " << AccuracyDefinition(m.detection.Level()) << "\n";
  out << "metric,value\n";
  out << "utterances," << m.utterances << "\n";
  ordered_json per = m.per, wper = m.wper;
  out << "per," << per.dump() << "\n";
  out << "wper," << wper.dump() << "\n";
  for (DysfluencyType t : kScoredTypes) {
    auto a = m.detection.Accuracy(t);
    out << DysfluencyTypeName(t) << "_acc,";
    if (a) out << ordered_json(*a).dump();
    out << "\n";
  }
  return out.str();
}

void WriteFileAtomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) {
      std::filesystem::remove(tmp);
      throw InputError("cannot write " + path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot write " + path + ": " + ec.message());
  }
}

}  // namespace dysfst
