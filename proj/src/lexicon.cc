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

#include "dysfst/lexicon.h"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "dysfst/error.h"

namespace dysfst {

Lexicon::Lexicon(const std::vector<std::string>& phonemes)
    : phonemes_(phonemes) {
  auto table = std::make_shared<SymbolTable>();
  table->AddSymbol(kBlankSymbol);
  for (const auto& p : phonemes_) {
    if (p.empty() || p == kBlankSymbol || p == SymbolTable::kEpsilonSymbol) {
      throw InputError("lexicon: invalid phoneme label '" + p + "'");
    }
    if (table->Find(p)) throw InputError("lexicon: duplicate label '" + p + "'");
    table->AddSymbol(p);
  }
  symbols_ = std::move(table);
}

const Lexicon& Lexicon::Default() {
  static const Lexicon lexicon({"AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH",
                                "D",  "DH", "EH", "ER", "EY", "F",  "G",  "HH",
                                "IH", "IY", "JH", "K",  "L",  "M",  "N",  "NG",
                                "OW", "OY", "P",  "R",  "S",  "SH", "T",  "TH",
                                "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"});
  return lexicon;
}

Lexicon Lexicon::Parse(std::istream& is, const std::string& source) {
  std::vector<std::string> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ls(line);
    std::string label, extra;
    if (!(ls >> label)) continue;
    if (ls >> extra) {
      throw InputError(source + ":" + std::to_string(line_no) +
                       ": more than one label on a line");
    }
    labels.push_back(label);
  }
  if (labels.empty() || labels.front() != kBlankSymbol) {
    throw InputError(source + ": first label must be " +
                     std::string(kBlankSymbol));
  }
  labels.erase(labels.begin());
  return Lexicon(labels);
}

Lexicon Lexicon::FromFile(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open lexicon file " + path);
  return Parse(is, path);
}

std::string Lexicon::ToText() const {
  std::string out = std::string(kBlankSymbol) + "\n";
  for (const auto& p : phonemes_) out += p + "\n";
  return out;
}

std::optional<Label> Lexicon::Find(std::string_view phoneme) const {
  auto id = symbols_->Find(phoneme);
  if (!id || *id <= kBlank) return std::nullopt;
  return id;
}

Label Lexicon::Id(std::string_view phoneme) const {
  auto id = Find(phoneme);
  if (!id) {
    throw InputError("phoneme '" + std::string(phoneme) +
                     "' is not in the lexicon");
  }
  return *id;
}

std::vector<Label> Lexicon::Ids(const PhonemeSequence& phonemes) const {
  std::vector<Label> out;
  out.reserve(phonemes.size());
  for (const auto& p : phonemes) out.push_back(Id(p));
  return out;
}

}  // namespace dysfst
