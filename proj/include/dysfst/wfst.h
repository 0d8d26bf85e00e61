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

#ifndef DYSFST_WFST_H_
#define DYSFST_WFST_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dysfst/symbol_table.h"
#include "dysfst/weight.h"

namespace dysfst {

using StateId = std::int32_t;

inline constexpr StateId kNoState = -1;

struct Arc {
  StateId src = kNoState;
  StateId dst = kNoState;
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  TropicalWeight weight = TropicalWeight::One();

  friend bool operator==(const Arc&, const Arc&) = default;
};

// Weighted transducer over the tropical semiring. States are dense ids
// assigned in construction order. An acceptor is a Wfst whose arcs all carry
// ilabel == olabel.
//
// Machines are built with the mutators and then treated as immutable; all
// algorithms take them by const reference.
class Wfst {
 public:
  Wfst(std::shared_ptr<const SymbolTable> input_symbols,
       std::shared_ptr<const SymbolTable> output_symbols);

  StateId AddState();
  void AddStates(StateId count);
  void AddStart(StateId state);
  void SetFinal(StateId state, TropicalWeight weight = TropicalWeight::One());
  // Throws StructuralError for unknown states or labels outside the alphabets.
  void AddArc(StateId src, StateId dst, Label ilabel, Label olabel,
              TropicalWeight weight);

  StateId NumStates() const { return static_cast<StateId>(arcs_.size()); }
  std::size_t NumArcs() const { return num_arcs_; }
  std::span<const Arc> Arcs(StateId state) const { return arcs_[state]; }

  const std::vector<StateId>& Starts() const { return starts_; }
  bool IsStart(StateId state) const;
  TropicalWeight Final(StateId state) const { return finals_[state]; }
  bool IsFinal(StateId state) const { return !finals_[state].IsZero(); }
  std::vector<StateId> AcceptStates() const;

  const SymbolTable& InputSymbols() const { return *isyms_; }
  const SymbolTable& OutputSymbols() const { return *osyms_; }
  const std::shared_ptr<const SymbolTable>& InputSymbolsPtr() const {
    return isyms_;
  }
  const std::shared_ptr<const SymbolTable>& OutputSymbolsPtr() const {
    return osyms_;
  }

  bool IsAcceptor() const;
  bool HasStartAndAccept() const;

  // One arc per line "src\tdst\tilabel\tolabel\tweight" in state order, then
  // one "state\tfinal_weight" line per accepting state.
  std::string DebugDump() const;

 private:
  bool ValidState(StateId s) const { return s >= 0 && s < NumStates(); }

  std::shared_ptr<const SymbolTable> isyms_;
  std::shared_ptr<const SymbolTable> osyms_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<TropicalWeight> finals_;
  std::vector<StateId> starts_;
  std::size_t num_arcs_ = 0;
};

// Shortest round-trip text for a weight ("inf" for Zero()).
std::string FormatWeight(TropicalWeight w);

}  // namespace dysfst

#endif  // DYSFST_WFST_H_
