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

#ifndef DYSFST_REPORT_H_
#define DYSFST_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "dysfst/decoder.h"
#include "dysfst/detector.h"
#include "dysfst/experiments.h"
#include "dysfst/metrics.h"

namespace dysfst {

// Detection report for one utterance, serialized with a fixed field order.
// An empty id is omitted. A missing transcription gives status "no_path"
// and no segment fields.
std::string DetectionReportJson(const std::string& id,
                                const PhonemeSequence& reference,
                                const SeverityConfig& config,
                                const DecodeResult& result,
                                const DetectionResult& detection, int indent);

// The parts of a detection report that evaluation needs.
struct ParsedReport {
  std::string id;
  bool no_path = false;
  PhonemeSequence phonemes;
  std::vector<DysfluencyEvent> events;
};

ParsedReport ParseDetectionReport(const std::string& json_text,
                                  const std::string& where);

// Corpus manifest, one JSON object per line:
// {"id", "emission", "reference", "spoken", "annotations", "deleted"}.
// Emission paths are relative to the manifest's directory.
struct ManifestRecord {
  std::string id;
  std::string emission;
  PhonemeSequence reference;
  GoldLabels gold;
};

std::string ManifestLine(const ManifestRecord& record);
std::vector<ManifestRecord> ReadManifest(const std::string& path);

// Loads every record and its emission; throws InputError naming the file.
std::vector<CorpusItem> LoadCorpus(const std::string& manifest_path);

struct MetricsReport {
  std::size_t utterances = 0;
  double per = 0.0;
  double wper = 0.0;
  DetectionAccumulator detection;
  std::string similarity_provenance;
};

std::string MetricsJson(const MetricsReport& metrics);
std::string MetricsCsv(const MetricsReport& metrics);

// Writes to a temporary sibling and renames it over path.
void WriteFileAtomic(const std::string& path, const std::string& contents);

}  // namespace dysfst

#endif  // DYSFST_REPORT_H_
