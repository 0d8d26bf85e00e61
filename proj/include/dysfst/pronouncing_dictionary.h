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

#ifndef DYSFST_PRONOUNCING_DICTIONARY_H_
#define DYSFST_PRONOUNCING_DICTIONARY_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dysfst/lexicon.h"

namespace dysfst {

// CMUdict plain text: "WORD  PH1 PH2 ...". ";;;" comments, alternate
// pronunciations "WORD(2)" are ignored (the first one wins), stress digits
// are stripped. Words are stored lowercased.
class PronouncingDictionary {
 public:
  static PronouncingDictionary Parse(std::istream& is);
  static PronouncingDictionary FromFile(const std::string& path);

  std::optional<PhonemeSequence> Lookup(std::string_view word) const;
  // Up to n entries closest to `word` by edit distance.
  std::vector<std::string> Nearest(std::string_view word, std::size_t n) const;
  std::size_t Size() const { return entries_.size(); }

 private:
  std::map<std::string, PhonemeSequence> entries_;
};

// Lowercases, strips punctuation (apostrophes inside words are kept, so
// "She's" looks up "she's") and concatenates the pronunciations. Throws
// InputError on empty text or an out-of-vocabulary word; the message lists
// the nearest entries.
PhonemeSequence TextToPhonemes(std::string_view text,
                               const PronouncingDictionary& dictionary);

}  // namespace dysfst

#endif  // DYSFST_PRONOUNCING_DICTIONARY_H_
