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

#include "dysfst/symbol_table.h"

#include <stdexcept>

namespace dysfst {

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol); }

SymbolTable::SymbolTable(const std::vector<std::string>& symbols)
    : SymbolTable() {
  for (const auto& s : symbols) AddSymbol(s);
}

Label SymbolTable::AddSymbol(std::string_view symbol) {
  std::string key(symbol);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  Label id = static_cast<Label>(symbols_.size());
  symbols_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<Label> SymbolTable::Find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& SymbolTable::Symbol(Label label) const {
  if (!Contains(label)) {
    throw std::out_of_range("symbol id " + std::to_string(label) +
                            " not in table");
  }
  return symbols_[label];
}

}  // namespace dysfst
