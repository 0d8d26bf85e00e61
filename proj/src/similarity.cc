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

#include "dysfst/similarity.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "dysfst/error.h"

namespace dysfst {

SimilarityMatrix::SimilarityMatrix(std::vector<std::string> phonemes,
                                   std::vector<double> values,
                                   std::string provenance)
    : phonemes_(std::move(phonemes)),
      values_(std::move(values)),
      provenance_(std::move(provenance)) {
  const std::size_t n = phonemes_.size();
  if (values_.size() != n * n) {
    throw InputError("similarity matrix: expected " + std::to_string(n * n) +
                     " values, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (phonemes_[i] == phonemes_[j]) {
        throw InputError("similarity matrix: duplicate phoneme " +
                         phonemes_[i]);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (At(i, i) != 1.0) {
      throw InputError("similarity matrix: S(" + phonemes_[i] + "," +
                       phonemes_[i] + ") != 1");
    }
    for (std::size_t j = 0; j < n; ++j) {
      double v = At(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw InputError("similarity matrix: S(" + phonemes_[i] + "," +
                         phonemes_[j] + ") outside [0, 1]");
      }
      if (v != At(j, i)) {
        throw InputError("similarity matrix: not symmetric at (" +
                         phonemes_[i] + "," + phonemes_[j] + ")");
      }
    }
  }
}

std::optional<std::size_t> SimilarityMatrix::Index(
    std::string_view phoneme) const {
  for (std::size_t i = 0; i < phonemes_.size(); ++i) {
    if (phonemes_[i] == phoneme) return i;
  }
  return std::nullopt;
}

double SimilarityMatrix::Similarity(std::string_view a,
                                    std::string_view b) const {
  auto i = Index(a);
  if (!i) throw InputError("unknown phoneme '" + std::string(a) + "'");
  auto j = Index(b);
  if (!j) throw InputError("unknown phoneme '" + std::string(b) + "'");
  return At(*i, *j);
}

namespace {

std::string FormatDouble(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void SimilarityMatrix::WriteCsv(std::ostream& out) const {
  out << "phoneme";
  for (const auto& p : phonemes_) out << ',' << p;
  out << '\n';
  for (std::size_t i = 0; i < phonemes_.size(); ++i) {
    out << phonemes_[i];
    for (std::size_t j = 0; j < phonemes_.size(); ++j) {
      out << ',' << FormatDouble(At(i, j));
    }
    out << '\n';
  }
}

std::string SimilarityMatrix::ToCsv() const {
  std::ostringstream out;
  WriteCsv(out);
  return out.str();
}

SimilarityMatrix SimilarityMatrix::ParseCsv(std::istream& in,
                                            std::string provenance) {
  std::string line;
  if (!std::getline(in, line)) throw InputError(provenance + ": empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = SplitCsvLine(line);
  if (header.size() < 2) throw InputError(provenance + ": bad header");
  std::vector<std::string> phonemes(header.begin() + 1, header.end());
  std::vector<double> values;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = SplitCsvLine(line);
    const std::string where = provenance + ": row " + std::to_string(row + 1);
    if (row >= phonemes.size()) throw InputError(where + ": too many rows");
    if (cells.size() != header.size()) {
      throw InputError(where + ": expected " + std::to_string(header.size()) +
                       " cells");
    }
    if (cells[0] != phonemes[row]) {
      throw InputError(where + ": label " + cells[0] + " != " + phonemes[row]);
    }
    for (std::size_t k = 1; k < cells.size(); ++k) {
      const std::string& c = cells[k];
      double v = 0.0;
      auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      if (res.ec != std::errc() || res.ptr != c.data() + c.size()) {
        throw InputError(where + ": bad number '" + c + "'");
      }
      values.push_back(v);
    }
    ++row;
  }
  if (row != phonemes.size()) {
    throw InputError(provenance + ": expected " +
                     std::to_string(phonemes.size()) + " rows");
  }
  return SimilarityMatrix(std::move(phonemes), std::move(values),
                          std::move(provenance));
}

SimilarityMatrix SimilarityMatrix::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open similarity matrix " + path);
  return ParseCsv(in, path);
}

namespace {

enum Manner { kStop, kAffricate, kFricative, kNasal, kLiquid, kGlide };
enum Glide { kMonophthong, kFrontGlide, kBackGlide };

struct Features {
  bool vowel;
  // consonants
  int voiced = 0;
  int place = 0;  // 0 bilabial .. 7 glottal
  Manner manner = kStop;
  // vowels
  double height = 0;    // 0 low .. 1 high
  double backness = 0;  // 0 front .. 1 back
  int rounded = 0;
  Glide glide = kMonophthong;
  int rhotic = 0;
};

Features C(int voiced, int place, Manner m) {
  Features f{false};
  f.voiced = voiced;
  f.place = place;
  f.manner = m;
  return f;
}

Features V(double height, double backness, int rounded, Glide g = kMonophthong,
           int rhotic = 0) {
  Features f{true};
  f.height = height;
  f.backness = backness;
  f.rounded = rounded;
  f.glide = g;
  f.rhotic = rhotic;
  return f;
}

const std::map<std::string, Features>& FeatureTable() {
  // Places: 0 bilabial, 1 labiodental, 2 dental, 3 alveolar,
  // 4 postalveolar, 5 palatal, 6 velar, 7 glottal.
  static const std::map<std::string, Features> table = {
      {"AA", V(0.0, 1.0, 0)},
      {"AE", V(0.0, 0.0, 0)},
      {"AH", V(0.5, 0.5, 0)},
      {"AO", V(0.25, 1.0, 1)},
      {"AW", V(0.0, 0.5, 0, kBackGlide)},
      {"AY", V(0.0, 0.5, 0, kFrontGlide)},
      {"EH", V(0.5, 0.0, 0)},
      {"ER", V(0.5, 0.5, 0, kMonophthong, 1)},
      {"EY", V(0.5, 0.0, 0, kFrontGlide)},
      {"IH", V(0.75, 0.0, 0)},
      {"IY", V(1.0, 0.0, 0)},
      {"OW", V(0.5, 1.0, 1, kBackGlide)},
      {"OY", V(0.5, 1.0, 1, kFrontGlide)},
      {"UH", V(0.75, 1.0, 1)},
      {"UW", V(1.0, 1.0, 1)},
      {"B", C(1, 0, kStop)},
      {"CH", C(0, 4, kAffricate)},
      {"D", C(1, 3, kStop)},
      {"DH", C(1, 2, kFricative)},
      {"F", C(0, 1, kFricative)},
      {"G", C(1, 6, kStop)},
      {"HH", C(0, 7, kFricative)},
      {"JH", C(1, 4, kAffricate)},
      {"K", C(0, 6, kStop)},
      {"L", C(1, 3, kLiquid)},
      {"M", C(1, 0, kNasal)},
      {"N", C(1, 3, kNasal)},
      {"NG", C(1, 6, kNasal)},
      {"P", C(0, 0, kStop)},
      {"R", C(1, 4, kLiquid)},
      {"S", C(0, 3, kFricative)},
      {"SH", C(0, 4, kFricative)},
      {"T", C(0, 3, kStop)},
      {"TH", C(0, 2, kFricative)},
      {"V", C(1, 1, kFricative)},
      {"W", C(1, 0, kGlide)},
      {"Y", C(1, 5, kGlide)},
      {"Z", C(1, 3, kFricative)},
      {"ZH", C(1, 4, kFricative)},
  };
  return table;
}

double FeatureDistance(const Features& a, const Features& b) {
  if (a.vowel != b.vowel) return 1.0;
  if (!a.vowel) {
    return (std::abs(a.voiced - b.voiced) + std::abs(a.place - b.place) / 7.0 +
            (a.manner != b.manner ? 1.0 : 0.0)) /
           3.0;
  }
  return (std::abs(a.height - b.height) + std::abs(a.backness - b.backness) +
          std::abs(a.rounded - b.rounded) + (a.glide != b.glide ? 1.0 : 0.0) +
          std::abs(a.rhotic - b.rhotic)) /
         5.0;
}

}  // namespace

const SimilarityMatrix& DefaultSimilarity() {
  static const SimilarityMatrix matrix = [] {
    std::vector<std::string> phonemes;
    for (const auto& [p, f] : FeatureTable()) phonemes.push_back(p);
    std::vector<double> values;
    for (const auto& a : phonemes) {
      for (const auto& b : phonemes) {
        values.push_back(
            1.0 - FeatureDistance(FeatureTable().at(a), FeatureTable().at(b)));
      }
    }
    return SimilarityMatrix(std::move(phonemes), std::move(values),
                            std::string(kDefaultSimilarityProvenance));
  }();
  return matrix;
}

}  // namespace dysfst
