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

#include "dysfst/shortest_path.h"

#include <algorithm>
#include <deque>
#include <string>

#include "dysfst/error.h"

namespace dysfst {

bool TryTopologicalOrder(const Wfst& machine, std::vector<StateId>* order,
                         std::vector<StateId>* unordered) {
  const StateId n = machine.NumStates();
  std::vector<std::size_t> indegree(n, 0);
  for (StateId s = 0; s < n; ++s) {
    for (const Arc& a : machine.Arcs(s)) ++indegree[a.dst];
  }
  order->clear();
  order->reserve(n);
  std::deque<StateId> ready;
  for (StateId s = 0; s < n; ++s) {
    if (indegree[s] == 0) ready.push_back(s);
  }
  while (!ready.empty()) {
    StateId s = ready.front();
    ready.pop_front();
    order->push_back(s);
    for (const Arc& a : machine.Arcs(s)) {
      if (--indegree[a.dst] == 0) ready.push_back(a.dst);
    }
  }
  if (static_cast<StateId>(order->size()) == n) return true;
  if (unordered != nullptr) {
    unordered->clear();
    for (StateId s = 0; s < n; ++s) {
      if (indegree[s] > 0) unordered->push_back(s);
    }
  }
  return false;
}

std::vector<StateId> TopologicalOrder(const Wfst& machine) {
  std::vector<StateId> order;
  std::vector<StateId> cyclic;
  if (!TryTopologicalOrder(machine, &order, &cyclic)) {
    std::string msg = "machine is cyclic; states on or after a cycle:";
    for (std::size_t i = 0; i < cyclic.size() && i < 10; ++i) {
      msg += " " + std::to_string(cyclic[i]);
    }
    if (cyclic.size() > 10) msg += " ...";
    throw StructuralError(msg);
  }
  return order;
}

std::optional<Path> ShortestPath(const Wfst& machine) {
  const std::vector<StateId> order = TopologicalOrder(machine);
  const StateId n = machine.NumStates();

  struct BackPointer {
    StateId prev = kNoState;
    std::size_t arc_index = 0;
  };
  std::vector<TropicalWeight> dist(n, TropicalWeight::Zero());
  std::vector<BackPointer> back(n);
  std::vector<StateId> origin(n, kNoState);

  for (StateId s : machine.Starts()) {
    if (TropicalWeight::One() < dist[s]) {
      dist[s] = TropicalWeight::One();
      origin[s] = s;
    }
  }
  for (StateId s : order) {
    if (dist[s].IsZero()) continue;
    auto arcs = machine.Arcs(s);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const Arc& a = arcs[i];
      TropicalWeight cand = Times(dist[s], a.weight);
      if (cand < dist[a.dst]) {
        dist[a.dst] = cand;
        back[a.dst] = {s, i};
        origin[a.dst] = origin[s];
      }
    }
  }

  StateId best = kNoState;
  TropicalWeight best_weight = TropicalWeight::Zero();
  for (StateId s = 0; s < n; ++s) {
    if (!machine.IsFinal(s) || dist[s].IsZero()) continue;
    TropicalWeight w = Times(dist[s], machine.Final(s));
    if (w < best_weight) {
      best_weight = w;
      best = s;
    }
  }
  if (best == kNoState) return std::nullopt;

  Path path;
  path.start = origin[best];
  path.final_weight = machine.Final(best);
  path.total_weight = best_weight;
  for (StateId s = best; back[s].prev != kNoState;) {
    const BackPointer& bp = back[s];
    path.arcs.push_back(machine.Arcs(bp.prev)[bp.arc_index]);
    path.arc_indices.push_back(bp.arc_index);
    s = bp.prev;
  }
  std::reverse(path.arcs.begin(), path.arcs.end());
  std::reverse(path.arc_indices.begin(), path.arc_indices.end());
  return path;
}

}  // namespace dysfst
