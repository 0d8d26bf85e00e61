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

#ifndef DYSFST_PATH_H_
#define DYSFST_PATH_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "dysfst/wfst.h"

namespace dysfst {

// An accepting path. total_weight is the left fold of Times over the arc
// weights followed by the final weight of the last state.
struct Path {
  StateId start = kNoState;
  std::vector<Arc> arcs;
  std::vector<std::size_t> arc_indices;  // position of each arc in its state
  TropicalWeight final_weight = TropicalWeight::One();
  TropicalWeight total_weight = TropicalWeight::One();

  std::vector<Label> InputString() const;
  std::vector<Label> OutputString() const;
};

// Recomputes the total weight from arcs and final weight alone.
TropicalWeight FoldPathWeight(const Path& path);

// True when the path is connected, starts at a start state and ends at an
// accepting state of `machine`.
bool IsAcceptingPath(const Wfst& machine, const Path& path);

struct EnumerateOptions {
  std::size_t max_paths = 1'000'000;
};

// Visits every accepting path whose number of non-epsilon input labels is at
// most max_input_len and whose runs of input-epsilon arcs are no longer than
// the number of states. Paths arrive in lexicographic order of (start state
// position, arc indices), a prefix before its extensions. The visitor sees a
// Path whose storage is reused between calls. Throws ResourceError past
// options.max_paths.
void ForEachPath(const Wfst& machine, std::size_t max_input_len,
                 const std::function<void(const Path&)>& visit,
                 const EnumerateOptions& options = {});

std::vector<Path> EnumeratePaths(const Wfst& machine,
                                 std::size_t max_input_len,
                                 const EnumerateOptions& options = {});

}  // namespace dysfst

#endif  // DYSFST_PATH_H_
