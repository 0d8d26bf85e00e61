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

#ifndef DYSFST_LEXICON_H_
#define DYSFST_LEXICON_H_

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dysfst/symbol_table.h"

namespace dysfst {

using PhonemeSequence = std::vector<std::string>;

// Phoneme classes of the acoustic model. Symbol ids: 0 epsilon, 1 blank,
// 2.. phonemes in lexicon order. Emission column c holds class c, which is
// symbol id c + 1, so the class count C includes the blank.
class Lexicon {
 public:
  static constexpr std::string_view kBlankSymbol = "<blk>";
  static constexpr Label kBlank = 1;

  // Blank is prepended; phonemes must be unique and non-empty.
  explicit Lexicon(const std::vector<std::string>& phonemes);

  // 39 ARPABET phonemes without stress, alphabetical.
  static const Lexicon& Default();

  // One label per line, "#" starts a comment. The first label must be the
  // blank; the k-th label (from 0) gets symbol id k + 1.
  static Lexicon Parse(std::istream& is, const std::string& source = "<stream>");
  static Lexicon FromFile(const std::string& path);
  std::string ToText() const;

  int NumClasses() const { return static_cast<int>(phonemes_.size()) + 1; }
  int NumPhonemes() const { return static_cast<int>(phonemes_.size()); }
  const std::vector<std::string>& Phonemes() const { return phonemes_; }

  static constexpr Label ClassToLabel(int c) { return c + 1; }
  static constexpr int LabelToClass(Label l) { return l - 1; }

  bool IsPhoneme(Label l) const { return l > kBlank && l <= NumClasses(); }
  std::optional<Label> Find(std::string_view phoneme) const;
  // Throws InputError naming the phoneme.
  Label Id(std::string_view phoneme) const;
  std::vector<Label> Ids(const PhonemeSequence& phonemes) const;
  const std::string& Symbol(Label l) const { return symbols_->Symbol(l); }

  const std::shared_ptr<const SymbolTable>& Symbols() const { return symbols_; }

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.phonemes_ == b.phonemes_;
  }

 private:
  std::vector<std::string> phonemes_;
  std::shared_ptr<const SymbolTable> symbols_;
};

}  // namespace dysfst

#endif  // DYSFST_LEXICON_H_
