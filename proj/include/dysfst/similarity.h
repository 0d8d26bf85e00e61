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

#ifndef DYSFST_SIMILARITY_H_
#define DYSFST_SIMILARITY_H_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dysfst {

// Symmetric phoneme similarity in [0, 1] with a unit diagonal. The
// substitution cost of WPER is 1 - S(a, b).
class SimilarityMatrix {
 public:
  // values is row-major, phonemes.size() squared. Throws InputError if the
  // matrix is not square, symmetric, unit-diagonal and within [0, 1].
  SimilarityMatrix(std::vector<std::string> phonemes, std::vector<double> values,
                   std::string provenance);

  std::size_t Size() const { return phonemes_.size(); }
  const std::vector<std::string>& Phonemes() const { return phonemes_; }
  const std::string& Provenance() const { return provenance_; }
  const std::vector<double>& Values() const { return values_; }

  std::optional<std::size_t> Index(std::string_view phoneme) const;
  double At(std::size_t i, std::size_t j) const {
    return values_[i * phonemes_.size() + j];
  }
  // Throws InputError naming an unknown phoneme.
  double Similarity(std::string_view a, std::string_view b) const;

  // First row and column hold labels; cells are shortest round-trip doubles.
  void WriteCsv(std::ostream& out) const;
  std::string ToCsv() const;
  static SimilarityMatrix ParseCsv(std::istream& in, std::string provenance);
  static SimilarityMatrix FromFile(const std::string& path);

  friend bool operator==(const SimilarityMatrix& a, const SimilarityMatrix& b) {
    return a.phonemes_ == b.phonemes_ && a.values_ == b.values_;
  }

 private:
  std::vector<std::string> phonemes_;
  std::vector<double> values_;
  std::string provenance_;
};

inline constexpr std::string_view kDefaultSimilarityProvenance =
    "default-articulatory";

// Built from articulatory features over the 39 ARPABET phonemes.
// Consonants: voicing, place (ordinal, front to back), manner (categorical).
// Vowels: height, backness, rounding, diphthong offglide, r-colouring.
// S = 1 - mean feature distance; consonant/vowel pairs score 0.
const SimilarityMatrix& DefaultSimilarity();

}  // namespace dysfst

#endif  // DYSFST_SIMILARITY_H_
