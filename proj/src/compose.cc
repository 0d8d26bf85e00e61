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

#include "dysfst/compose.h"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "dysfst/error.h"

namespace dysfst {
namespace {

// Arcs of one state sorted by input label, original order kept within a
// label so the composed arc order is reproducible.
class InputLabelIndex {
 public:
  explicit InputLabelIndex(const Wfst& fst) : fst_(fst) {
    sorted_.resize(fst.NumStates());
    for (StateId s = 0; s < fst.NumStates(); ++s) {
      auto arcs = fst.Arcs(s);
      auto& idx = sorted_[s];
      idx.resize(arcs.size());
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::stable_sort(idx.begin(), idx.end(),
                       [&arcs](std::size_t a, std::size_t b) {
                         return arcs[a].ilabel < arcs[b].ilabel;
                       });
    }
  }

  template <typename Fn>
  void ForEachMatch(StateId s, Label ilabel, Fn&& fn) const {
    auto arcs = fst_.Arcs(s);
    const auto& idx = sorted_[s];
    auto lo = std::partition_point(idx.begin(), idx.end(), [&](std::size_t i) {
      return arcs[i].ilabel < ilabel;
    });
    for (auto it = lo; it != idx.end() && arcs[*it].ilabel == ilabel; ++it) {
      fn(arcs[*it]);
    }
  }

 private:
  const Wfst& fst_;
  std::vector<std::vector<std::size_t>> sorted_;
};

// Filter states: 0 = free, 1 = left has moved alone on an output epsilon,
// 2 = right has moved alone on an input epsilon.
enum FilterState : int { kFree = 0, kLeftEps = 1, kRightEps = 2 };

struct Triple {
  StateId left;
  StateId right;
  int filter;
};

}  // namespace

Wfst Compose(const Wfst& left, const Wfst& right) {
  if (!(left.OutputSymbols() == right.InputSymbols())) {
    throw ConfigError(
        "Compose: left output alphabet differs from right input alphabet");
  }
  if (!left.HasStartAndAccept()) {
    throw StructuralError("Compose: left machine has no start or accept state");
  }
  if (!right.HasStartAndAccept()) {
    throw StructuralError(
        "Compose: right machine has no start or accept state");
  }

  Wfst out(left.InputSymbolsPtr(), right.OutputSymbolsPtr());
  InputLabelIndex right_index(right);

  const std::uint64_t nr = static_cast<std::uint64_t>(right.NumStates());
  std::unordered_map<std::uint64_t, StateId> ids;
  std::vector<Triple> triples;
  std::deque<StateId> queue;

  auto get = [&](StateId l, StateId r, int f) {
    std::uint64_t key = (static_cast<std::uint64_t>(l) * nr + r) * 3 + f;
    auto [it, inserted] = ids.try_emplace(key, kNoState);
    if (inserted) {
      it->second = out.AddState();
      triples.push_back({l, r, f});
      queue.push_back(it->second);
    }
    return it->second;
  };

  for (StateId ls : left.Starts()) {
    for (StateId rs : right.Starts()) out.AddStart(get(ls, rs, kFree));
  }

  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    const Triple t = triples[s];
    if (left.IsFinal(t.left) && right.IsFinal(t.right)) {
      out.SetFinal(s, Times(left.Final(t.left), right.Final(t.right)));
    }
    for (const Arc& la : left.Arcs(t.left)) {
      if (la.olabel != kEpsilon) {
        right_index.ForEachMatch(t.right, la.olabel, [&](const Arc& ra) {
          StateId d = get(la.dst, ra.dst, kFree);
          out.AddArc(s, d, la.ilabel, ra.olabel, Times(la.weight, ra.weight));
        });
        continue;
      }
      if (t.filter != kRightEps) {
        StateId d = get(la.dst, t.right, kLeftEps);
        out.AddArc(s, d, la.ilabel, kEpsilon, la.weight);
      }
      if (t.filter == kFree) {
        right_index.ForEachMatch(t.right, kEpsilon, [&](const Arc& ra) {
          StateId d = get(la.dst, ra.dst, kFree);
          out.AddArc(s, d, la.ilabel, ra.olabel, Times(la.weight, ra.weight));
        });
      }
    }
    if (t.filter != kLeftEps) {
      right_index.ForEachMatch(t.right, kEpsilon, [&](const Arc& ra) {
        StateId d = get(t.left, ra.dst, kRightEps);
        out.AddArc(s, d, kEpsilon, ra.olabel, ra.weight);
      });
    }
  }
  return out;
}

}  // namespace dysfst
