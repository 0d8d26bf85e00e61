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

#ifndef DYSFST_SYMBOL_TABLE_H_
#define DYSFST_SYMBOL_TABLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dysfst {

using Label = std::int32_t;

inline constexpr Label kEpsilon = 0;

// Dense label <-> string map. Id 0 is always "<eps>".
class SymbolTable {
 public:
  static constexpr std::string_view kEpsilonSymbol = "<eps>";

  SymbolTable();
  explicit SymbolTable(const std::vector<std::string>& symbols);

  // Returns the existing id when the symbol is already present.
  Label AddSymbol(std::string_view symbol);

  std::optional<Label> Find(std::string_view symbol) const;
  const std::string& Symbol(Label label) const;
  bool Contains(Label label) const {
    return label >= 0 && static_cast<std::size_t>(label) < symbols_.size();
  }
  std::size_t Size() const { return symbols_.size(); }
  const std::vector<std::string>& Symbols() const { return symbols_; }

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> index_;
};

}  // namespace dysfst

#endif  // DYSFST_SYMBOL_TABLE_H_
