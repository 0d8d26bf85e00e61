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

#include "dysfst/wfst.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dysfst/error.h"

namespace dysfst {

std::string FormatWeight(TropicalWeight w) {
  if (w.IsZero()) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), w.Value());
  return std::string(buf, res.ptr);
}

Wfst::Wfst(std::shared_ptr<const SymbolTable> input_symbols,
           std::shared_ptr<const SymbolTable> output_symbols)
    : isyms_(std::move(input_symbols)), osyms_(std::move(output_symbols)) {
  if (!isyms_ || !osyms_) throw ConfigError("Wfst: null symbol table");
}

StateId Wfst::AddState() {
  arcs_.emplace_back();
  finals_.push_back(TropicalWeight::Zero());
  return NumStates() - 1;
}

void Wfst::AddStates(StateId count) {
  for (StateId i = 0; i < count; ++i) AddState();
}

void Wfst::AddStart(StateId state) {
  if (!ValidState(state)) {
    throw StructuralError("AddStart: no state " + std::to_string(state));
  }
  if (!IsStart(state)) starts_.push_back(state);
}

bool Wfst::IsStart(StateId state) const {
  return std::find(starts_.begin(), starts_.end(), state) != starts_.end();
}

void Wfst::SetFinal(StateId state, TropicalWeight weight) {
  if (!ValidState(state)) {
    throw StructuralError("SetFinal: no state " + std::to_string(state));
  }
  finals_[state] = weight;
}

void Wfst::AddArc(StateId src, StateId dst, Label ilabel, Label olabel,
                  TropicalWeight weight) {
  if (!ValidState(src) || !ValidState(dst)) {
    throw StructuralError("AddArc: arc " + std::to_string(src) + " -> " +
                          std::to_string(dst) + " leaves the state set");
  }
  if (!isyms_->Contains(ilabel) || !osyms_->Contains(olabel)) {
    throw StructuralError("AddArc: label outside alphabet on arc " +
                          std::to_string(src) + " -> " + std::to_string(dst));
  }
  arcs_[src].push_back(Arc{src, dst, ilabel, olabel, weight});
  ++num_arcs_;
}

std::vector<StateId> Wfst::AcceptStates() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < NumStates(); ++s) {
    if (IsFinal(s)) out.push_back(s);
  }
  return out;
}

bool Wfst::IsAcceptor() const {
  for (const auto& state_arcs : arcs_) {
    for (const Arc& a : state_arcs) {
      if (a.ilabel != a.olabel) return false;
    }
  }
  return true;
}

bool Wfst::HasStartAndAccept() const {
  if (starts_.empty()) return false;
  return std::any_of(finals_.begin(), finals_.end(),
                     [](TropicalWeight w) { return !w.IsZero(); });
}

std::string Wfst::DebugDump() const {
  std::ostringstream os;
  for (const auto& state_arcs : arcs_) {
    for (const Arc& a : state_arcs) {
      os << a.src << '\t' << a.dst << '\t' << a.ilabel << '\t' << a.olabel
         << '\t' << FormatWeight(a.weight) << '\n';
    }
  }
  for (StateId s = 0; s < NumStates(); ++s) {
    if (IsFinal(s)) os << s << '\t' << FormatWeight(finals_[s]) << '\n';
  }
  return os.str();
}

}  // namespace dysfst
