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

#include "dysfst/path.h"

#include "dysfst/error.h"

namespace dysfst {

std::vector<Label> Path::InputString() const {
  std::vector<Label> out;
  for (const Arc& a : arcs) {
    if (a.ilabel != kEpsilon) out.push_back(a.ilabel);
  }
  return out;
}

std::vector<Label> Path::OutputString() const {
  std::vector<Label> out;
  for (const Arc& a : arcs) {
    if (a.olabel != kEpsilon) out.push_back(a.olabel);
  }
  return out;
}

TropicalWeight FoldPathWeight(const Path& path) {
  TropicalWeight w = TropicalWeight::One();
  for (const Arc& a : path.arcs) w = Times(w, a.weight);
  return Times(w, path.final_weight);
}

bool IsAcceptingPath(const Wfst& machine, const Path& path) {
  if (path.start < 0 || path.start >= machine.NumStates()) return false;
  if (!machine.IsStart(path.start)) return false;
  if (path.arcs.empty()) return machine.IsFinal(path.start);
  if (path.arcs.front().src != path.start) return false;
  for (std::size_t k = 0; k + 1 < path.arcs.size(); ++k) {
    if (path.arcs[k].dst != path.arcs[k + 1].src) return false;
  }
  return machine.IsFinal(path.arcs.back().dst);
}

namespace {

class PathWalker {
 public:
  PathWalker(const Wfst& machine, std::size_t max_input_len,
             const std::function<void(const Path&)>& visit,
             const EnumerateOptions& options)
      : machine_(machine),
        max_input_len_(max_input_len),
        max_eps_run_(static_cast<std::size_t>(machine.NumStates())),
        visit_(visit),
        options_(options) {}

  void Run() {
    for (StateId s : machine_.Starts()) {
      path_.start = s;
      Visit(s, 0, 0, TropicalWeight::One());
    }
  }

 private:
  void Visit(StateId state, std::size_t input_len, std::size_t eps_run,
             TropicalWeight prefix) {
    if (machine_.IsFinal(state)) {
      if (++count_ > options_.max_paths) {
        throw ResourceError("EnumeratePaths: more than " +
                            std::to_string(options_.max_paths) + " paths");
      }
      path_.final_weight = machine_.Final(state);
      path_.total_weight = Times(prefix, path_.final_weight);
      visit_(path_);
    }
    auto arcs = machine_.Arcs(state);
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const Arc& arc = arcs[i];
      std::size_t next_len = input_len;
      std::size_t next_run = 0;
      if (arc.ilabel != kEpsilon) {
        if (input_len + 1 > max_input_len_) continue;
        next_len = input_len + 1;
      } else {
        if (eps_run + 1 > max_eps_run_) continue;
        next_run = eps_run + 1;
      }
      path_.arcs.push_back(arc);
      path_.arc_indices.push_back(i);
      Visit(arc.dst, next_len, next_run, Times(prefix, arc.weight));
      path_.arcs.pop_back();
      path_.arc_indices.pop_back();
    }
  }

  const Wfst& machine_;
  std::size_t max_input_len_;
  std::size_t max_eps_run_;
  const std::function<void(const Path&)>& visit_;
  const EnumerateOptions& options_;
  std::size_t count_ = 0;
  Path path_;
};

}  // namespace

void ForEachPath(const Wfst& machine, std::size_t max_input_len,
                 const std::function<void(const Path&)>& visit,
                 const EnumerateOptions& options) {
  PathWalker(machine, max_input_len, visit, options).Run();
}

std::vector<Path> EnumeratePaths(const Wfst& machine,
                                 std::size_t max_input_len,
                                 const EnumerateOptions& options) {
  std::vector<Path> out;
  ForEachPath(
      machine, max_input_len, [&out](const Path& p) { out.push_back(p); },
      options);
  return out;
}

}  // namespace dysfst
