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

#include "dysfst/intersect.h"

#include <deque>
#include <string>
#include <unordered_map>

#include "dysfst/error.h"
#include "dysfst/shortest_path.h"

namespace dysfst {

Wfst Intersect(const Wfst& machine, const Wfst& acceptor) {
  if (!(machine.InputSymbols() == acceptor.InputSymbols())) {
    throw ConfigError("Intersect: input alphabets differ");
  }
  if (!acceptor.IsAcceptor()) {
    throw ConfigError("Intersect: second operand is not an acceptor");
  }
  // Per acceptor state, the arc index for each label; the acceptor is
  // expected to be deterministic, extra parallel arcs are kept in order.
  const std::size_t num_labels = acceptor.InputSymbols().Size();
  std::vector<std::vector<std::vector<std::size_t>>> by_label(
      acceptor.NumStates());
  for (StateId e = 0; e < acceptor.NumStates(); ++e) {
    auto arcs = acceptor.Arcs(e);
    by_label[e].resize(num_labels);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (arcs[i].ilabel == kEpsilon) {
        throw StructuralError("Intersect: acceptor has an epsilon arc at state " +
                              std::to_string(e));
      }
      by_label[e][arcs[i].ilabel].push_back(i);
    }
  }
  TopologicalOrder(acceptor);

  Wfst out(machine.InputSymbolsPtr(), machine.OutputSymbolsPtr());
  const std::uint64_t ne = static_cast<std::uint64_t>(acceptor.NumStates());
  std::unordered_map<std::uint64_t, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::deque<StateId> queue;
  auto get = [&](StateId q, StateId e) {
    auto [it, inserted] =
        ids.try_emplace(static_cast<std::uint64_t>(q) * ne + e, kNoState);
    if (inserted) {
      it->second = out.AddState();
      pairs.emplace_back(q, e);
      queue.push_back(it->second);
    }
    return it->second;
  };

  for (StateId qs : machine.Starts()) {
    for (StateId es : acceptor.Starts()) out.AddStart(get(qs, es));
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    const auto [q, e] = pairs[s];
    if (machine.IsFinal(q) && acceptor.IsFinal(e)) {
      out.SetFinal(s, Times(machine.Final(q), acceptor.Final(e)));
    }
    auto acceptor_arcs = acceptor.Arcs(e);
    for (const Arc& a : machine.Arcs(q)) {
      if (a.ilabel == kEpsilon) {
        out.AddArc(s, get(a.dst, e), kEpsilon, a.olabel, a.weight);
        continue;
      }
      for (std::size_t i : by_label[e][a.ilabel]) {
        const Arc& ea = acceptor_arcs[i];
        out.AddArc(s, get(a.dst, ea.dst), a.ilabel, a.olabel,
                   Times(a.weight, ea.weight));
      }
    }
  }

  std::vector<StateId> order;
  std::vector<StateId> cyclic;
  if (!TryTopologicalOrder(out, &order, &cyclic)) {
    std::string msg =
        "Intersect: epsilon cycle in the product; (machine state, acceptor "
        "state) pairs involved:";
    for (std::size_t i = 0; i < cyclic.size() && i < 10; ++i) {
      const auto [q, e] = pairs[cyclic[i]];
      msg += " (" + std::to_string(q) + "," + std::to_string(e) + ")";
    }
    if (cyclic.size() > 10) msg += " ...";
    throw StructuralError(msg);
  }
  return out;
}

}  // namespace dysfst
