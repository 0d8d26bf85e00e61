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

#include "dysfst/emission.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "dysfst/error.h"

namespace dysfst {
namespace {

constexpr char kMagic[] = "DWEM1";
constexpr std::size_t kMagicLen = 5;

void PutU32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

std::uint32_t GetU32(std::istream& is, const std::string& source,
                     const char* field) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) {
    throw InputError(source + ": truncated emission header (" + field + ")");
  }
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

double LogSumExp(std::span<const float> row) {
  double m = -std::numeric_limits<double>::infinity();
  for (float v : row) m = std::max(m, static_cast<double>(v));
  if (!std::isfinite(m)) return m;
  double sum = 0.0;
  for (float v : row) sum += std::exp(static_cast<double>(v) - m);
  return m + std::log(sum);
}

}  // namespace

EmissionMatrix::EmissionMatrix(int num_frames, int num_classes,
                               std::vector<float> values, float frame_shift_ms,
                               std::string provenance)
    : num_frames_(num_frames),
      num_classes_(num_classes),
      frame_shift_ms_(frame_shift_ms),
      values_(std::move(values)),
      provenance_(std::move(provenance)) {
  if (num_frames < 0 || num_classes <= 0) {
    throw InputError("emission: invalid shape");
  }
  if (values_.size() != static_cast<std::size_t>(num_frames) * num_classes) {
    throw InputError("emission: value count does not match T x C");
  }
  if (!(frame_shift_ms > 0.0f) || !std::isfinite(frame_shift_ms)) {
    throw InputError("emission: frame_shift_ms must be positive");
  }
}

double EmissionMatrix::MaxLogNormalizationError() const {
  double worst = 0.0;
  for (int t = 0; t < num_frames_; ++t) {
    double lse = LogSumExp(Row(t));
    double err = std::isnan(lse) ? std::numeric_limits<double>::infinity()
                                 : std::abs(lse);
    worst = std::max(worst, err);
  }
  return worst;
}

void CheckLogNormalized(const EmissionMatrix& emission, double tol) {
  for (int t = 0; t < emission.NumFrames(); ++t) {
    double lse = LogSumExp(emission.Row(t));
    if (!(std::abs(lse) <= tol)) {
      std::ostringstream os;
      os << emission.Provenance() << ": frame " << t
         << " is not log-normalized (logsumexp = " << lse << ")";
      throw InputError(os.str());
    }
  }
}

void WriteEmissionBinary(const EmissionMatrix& emission, std::ostream& os) {
  os.write(kMagic, kMagicLen);
  PutU32(os, static_cast<std::uint32_t>(emission.NumFrames()));
  PutU32(os, static_cast<std::uint32_t>(emission.NumClasses()));
  PutU32(os, std::bit_cast<std::uint32_t>(emission.FrameShiftMs()));
  for (float v : emission.Values()) PutU32(os, std::bit_cast<std::uint32_t>(v));
}

EmissionMatrix ReadEmissionBinary(std::istream& is, const std::string& source) {
  char magic[kMagicLen];
  if (!is.read(magic, kMagicLen) || std::memcmp(magic, kMagic, kMagicLen) != 0) {
    throw InputError(source + ": missing DWEM1 magic");
  }
  const std::uint32_t frames = GetU32(is, source, "T");
  const std::uint32_t classes = GetU32(is, source, "C");
  const float shift = std::bit_cast<float>(GetU32(is, source, "frame_shift_ms"));
  if (frames > (1u << 24) || classes == 0 || classes > (1u << 16)) {
    throw InputError(source + ": implausible emission shape");
  }
  std::vector<float> values(static_cast<std::size_t>(frames) * classes);
  for (auto& v : values) v = std::bit_cast<float>(GetU32(is, source, "values"));
  if (is.peek() != std::char_traits<char>::eof()) {
    throw InputError(source + ": trailing bytes after emission values");
  }
  return EmissionMatrix(static_cast<int>(frames), static_cast<int>(classes),
                        std::move(values), shift, "file:" + source);
}

EmissionMatrix ParseEmissionJson(const std::string& text,
                                 const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(source + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("logits") || !doc["logits"].is_array()) {
    throw InputError(source + ": expected an object with a \"logits\" array");
  }
  float shift = kDefaultFrameShiftMs;
  if (doc.contains("frame_shift_ms")) {
    if (!doc["frame_shift_ms"].is_number()) {
      throw InputError(source + ": frame_shift_ms must be a number");
    }
    shift = doc["frame_shift_ms"].get<float>();
  }
  const auto& rows = doc["logits"];
  int classes = -1;
  std::vector<float> values;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& row = rows[t];
    if (!row.is_array()) throw InputError(source + ": logits row is not an array");
    if (classes < 0) classes = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != classes) {
      throw InputError(source + ": logits row " + std::to_string(t) +
                       " has a different class count");
    }
    for (const auto& v : row) {
      if (v.is_number()) {
        values.push_back(v.get<float>());
      } else if (v.is_string() && v.get<std::string>() == "-inf") {
        values.push_back(-std::numeric_limits<float>::infinity());
      } else {
        throw InputError(source + ": non-numeric logit in row " +
                         std::to_string(t));
      }
    }
  }
  if (classes <= 0) {
    throw InputError(source + ": cannot infer class count from empty logits");
  }
  return EmissionMatrix(static_cast<int>(rows.size()), classes,
                        std::move(values), shift, "file:" + source);
}

EmissionMatrix ReadEmissionFile(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open emission file " + path);
  char magic[kMagicLen] = {};
  is.read(magic, kMagicLen);
  const bool binary =
      is.gcount() == static_cast<std::streamsize>(kMagicLen) &&
      std::memcmp(magic, kMagic, kMagicLen) == 0;
  is.clear();
  is.seekg(0);
  if (binary) return ReadEmissionBinary(is, path);
  std::string text((std::istreambuf_iterator<char>(is)),
                   std::istreambuf_iterator<char>());
  return ParseEmissionJson(text, path);
}

std::string EmissionToJson(const EmissionMatrix& emission) {
  nlohmann::ordered_json doc;
  doc["frame_shift_ms"] = emission.FrameShiftMs();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int t = 0; t < emission.NumFrames(); ++t) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int c = 0; c < emission.NumClasses(); ++c) {
      const float v = emission.At(t, c);
      if (std::isinf(v) && v < 0) {
        row.push_back("-inf");
      } else {
        row.push_back(v);
      }
    }
    rows.push_back(std::move(row));
  }
  doc["logits"] = std::move(rows);
  return doc.dump() + "\n";
}

void WriteEmissionFile(const EmissionMatrix& emission, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw InputError("cannot write emission file " + path);
  WriteEmissionBinary(emission, os);
  if (!os) throw InputError("failed writing emission file " + path);
}

Wfst BuildEmissionAcceptor(const EmissionMatrix& emission,
                           const Lexicon& lexicon) {
  if (emission.NumClasses() != lexicon.NumClasses()) {
    throw InputError("emission has " + std::to_string(emission.NumClasses()) +
                     " classes, lexicon has " +
                     std::to_string(lexicon.NumClasses()));
  }
  Wfst acceptor(lexicon.Symbols(), lexicon.Symbols());
  const int frames = emission.NumFrames();
  acceptor.AddStates(frames + 1);
  acceptor.AddStart(0);
  acceptor.SetFinal(frames);
  for (int t = 0; t < frames; ++t) {
    for (int c = 0; c < emission.NumClasses(); ++c) {
      const float v = emission.At(t, c);
      if (std::isnan(v)) {
        throw InputError(emission.Provenance() + ": NaN at frame " +
                         std::to_string(t) + ", class " + std::to_string(c) +
                         " (" + lexicon.Symbol(Lexicon::ClassToLabel(c)) + ")");
      }
      if (v == std::numeric_limits<float>::infinity()) {
        throw InputError(emission.Provenance() + ": +inf at frame " +
                         std::to_string(t) + ", class " + std::to_string(c));
      }
      if (v == -std::numeric_limits<float>::infinity()) continue;
      const Label l = Lexicon::ClassToLabel(c);
      acceptor.AddArc(t, t + 1, l, l,
                      TropicalWeight(-static_cast<double>(v)));
    }
  }
  return acceptor;
}

}  // namespace dysfst
