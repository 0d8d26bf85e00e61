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

#ifndef DYSFST_SHORTEST_PATH_H_
#define DYSFST_SHORTEST_PATH_H_

#include <optional>
#include <vector>

#include "dysfst/path.h"
#include "dysfst/wfst.h"

namespace dysfst {

// Kahn order over all states; ties are resolved by ascending state id.
// Returns false when the machine is cyclic and then lists in `unordered` the
// states Kahn could not place (cycle members and their descendants).
bool TryTopologicalOrder(const Wfst& machine, std::vector<StateId>* order,
                         std::vector<StateId>* unordered);

// Throws StructuralError when the machine is cyclic.
std::vector<StateId> TopologicalOrder(const Wfst& machine);

// Minimum-weight accepting path of an acyclic machine by dynamic programming
// in topological order; valid for negative weights. Among equal-weight
// candidates the first relaxed wins (states in topological order, arcs in
// index order, final states by ascending id). Returns nullopt when no
// accepting path exists.
std::optional<Path> ShortestPath(const Wfst& machine);

}  // namespace dysfst

#endif  // DYSFST_SHORTEST_PATH_H_
