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

#include "dysfst/pronouncing_dictionary.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>

#include "dysfst/error.h"

namespace dysfst {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string StripStress(std::string phoneme) {
  while (!phoneme.empty() &&
         std::isdigit(static_cast<unsigned char>(phoneme.back()))) {
    phoneme.pop_back();
  }
  return phoneme;
}

std::size_t EditDistance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

PronouncingDictionary PronouncingDictionary::Parse(std::istream& is) {
  PronouncingDictionary dict;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.rfind(";;;", 0) == 0) continue;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word.size() > 3 && word.back() == ')' &&
        word.find('(') != std::string::npos) {
      continue;  // alternate pronunciation
    }
    PhonemeSequence phones;
    std::string p;
    while (ls >> p) {
      if (p == "#") break;
      phones.push_back(StripStress(p));
    }
    if (phones.empty()) continue;
    dict.entries_.try_emplace(Lower(word), std::move(phones));
  }
  return dict;
}

PronouncingDictionary PronouncingDictionary::FromFile(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open pronouncing dictionary " + path);
  return Parse(is);
}

std::optional<PhonemeSequence> PronouncingDictionary::Lookup(
    std::string_view word) const {
  auto it = entries_.find(Lower(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> PronouncingDictionary::Nearest(std::string_view word,
                                                        std::size_t n) const {
  std::vector<std::pair<std::size_t, std::string>> scored;
  const std::string key = Lower(word);
  for (const auto& [w, _] : entries_) scored.emplace_back(EditDistance(key, w), w);
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < n; ++i) {
    out.push_back(scored[i].second);
  }
  return out;
}

PhonemeSequence TextToPhonemes(std::string_view text,
                               const PronouncingDictionary& dictionary) {
  std::string cleaned;
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    cleaned += (std::isalnum(u) || c == '\'') ? static_cast<char>(std::tolower(u))
                                              : ' ';
  }
  std::istringstream words(cleaned);
  PhonemeSequence out;
  std::string word;
  bool any = false;
  while (words >> word) {
    auto first = word.find_first_not_of('\'');
    auto last = word.find_last_not_of('\'');
    if (first == std::string::npos) continue;
    word = word.substr(first, last - first + 1);
    any = true;
    auto phones = dictionary.Lookup(word);
    if (!phones) {
      std::string msg = "word '" + word + "' is not in the dictionary; nearest:";
      for (const auto& w : dictionary.Nearest(word, 3)) msg += " " + w;
      throw InputError(msg);
    }
    out.insert(out.end(), phones->begin(), phones->end());
  }
  if (!any) throw InputError("reference text is empty");
  return out;
}

}  // namespace dysfst
