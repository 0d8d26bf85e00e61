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

// Brute-force oracles and random machine generators shared by the tests.
// Nothing here goes through Compose, Intersect or ShortestPath.

#ifndef DYSFST_TESTS_ORACLES_H_
#define DYSFST_TESTS_ORACLES_H_

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dysfst/emission.h"
#include "dysfst/lexicon.h"
#include "dysfst/path.h"
#include "dysfst/wfst.h"

namespace dysfst::testing {

using LabelString = std::vector<Label>;

struct WeightCount {
  double min = std::numeric_limits<double>::infinity();
  std::size_t count = 0;
};

// (input string, output string) -> (min weight, number of paths).
using Relation = std::map<std::pair<LabelString, LabelString>, WeightCount>;

inline Relation RelationOf(const Wfst& fst, std::size_t max_input_len) {
  Relation rel;
  ForEachPath(fst, max_input_len, [&](const Path& p) {
    auto& wc = rel[{p.InputString(), p.OutputString()}];
    wc.min = std::min(wc.min, p.total_weight.Value());
    ++wc.count;
  });
  return rel;
}

// Joins two relations on the middle string; count multiplies so that a
// correct composition produces exactly one path per joined pair.
inline Relation JoinRelations(const Relation& left, const Relation& right,
                              std::size_t max_input_len) {
  std::multimap<LabelString, std::pair<LabelString, WeightCount>> by_input;
  for (const auto& [key, wc] : right) {
    by_input.emplace(key.first, std::make_pair(key.second, wc));
  }
  Relation out;
  for (const auto& [key, lwc] : left) {
    if (key.first.size() > max_input_len) continue;
    auto [lo, hi] = by_input.equal_range(key.second);
    for (auto it = lo; it != hi; ++it) {
      const auto& [z, rwc] = it->second;
      auto& wc = out[{key.first, z}];
      wc.min = std::min(wc.min, lwc.min + rwc.min);
      wc.count += lwc.count * rwc.count;
    }
  }
  return out;
}

// Random machine over the given alphabets. With acyclic set every arc goes
// from a lower to a higher state id.
struct RandomMachineOptions {
  int num_states = 4;
  int num_arcs = 6;
  double epsilon_in = 0.2;
  double epsilon_out = 0.2;
  bool acyclic = true;
  double final_prob = 0.4;
};

inline Wfst RandomMachine(std::mt19937_64& rng,
                          std::shared_ptr<const SymbolTable> isyms,
                          std::shared_ptr<const SymbolTable> osyms,
                          const RandomMachineOptions& opt) {
  Wfst fst(isyms, osyms);
  fst.AddStates(opt.num_states);
  fst.AddStart(0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> state(0, opt.num_states - 1);
  std::uniform_int_distribution<Label> ilab(1, static_cast<Label>(isyms->Size()) - 1);
  std::uniform_int_distribution<Label> olab(1, static_cast<Label>(osyms->Size()) - 1);
  std::uniform_int_distribution<int> eighths(-8, 24);
  for (int i = 0; i < opt.num_arcs; ++i) {
    int s = state(rng), d = state(rng);
    if (opt.acyclic) {
      if (s == d) continue;
      if (s > d) std::swap(s, d);
    }
    Label il = unit(rng) < opt.epsilon_in ? kEpsilon : ilab(rng);
    Label ol = unit(rng) < opt.epsilon_out ? kEpsilon : olab(rng);
    fst.AddArc(s, d, il, ol, TropicalWeight(eighths(rng) / 8.0));
  }
  fst.SetFinal(opt.num_states - 1, TropicalWeight(eighths(rng) / 8.0));
  for (int s = 0; s + 1 < opt.num_states; ++s) {
    if (unit(rng) < opt.final_prob) fst.SetFinal(s, TropicalWeight(eighths(rng) / 8.0));
  }
  return fst;
}

// Plain CTC collapse: merge runs, drop blanks.
inline LabelString CtcCollapse(const LabelString& frames) {
  LabelString out;
  Label prev = kEpsilon;
  for (Label f : frames) {
    if (f != prev && f != Lexicon::kBlank) out.push_back(f);
    prev = f;
  }
  return out;
}

// All strings of exactly `len` labels drawn from [first, last].
inline std::vector<LabelString> AllStrings(Label first, Label last,
                                           std::size_t len) {
  std::vector<LabelString> out{{}};
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<LabelString> next;
    for (const auto& s : out) {
      for (Label l = first; l <= last; ++l) {
        next.push_back(s);
        next.back().push_back(l);
      }
    }
    out = std::move(next);
  }
  return out;
}

// First difference between two relations, or nullopt when the key sets
// match, weights agree within tol and (optionally) path counts are equal.
inline std::optional<std::string> RelationMismatch(const Relation& got,
                                                   const Relation& want,
                                                   double tol,
                                                   bool check_counts) {
  if (got.size() != want.size()) {
    return "relation sizes " + std::to_string(got.size()) + " vs " +
           std::to_string(want.size());
  }
  auto g = got.begin();
  for (auto w = want.begin(); w != want.end(); ++w, ++g) {
    if (g->first != w->first) return std::string("relation keys differ");
    if (!(std::abs(g->second.min - w->second.min) <= tol)) {
      return "weight " + std::to_string(g->second.min) + " vs " +
             std::to_string(w->second.min);
    }
    if (check_counts && g->second.count != w->second.count) {
      return "path count " + std::to_string(g->second.count) + " vs " +
             std::to_string(w->second.count);
    }
  }
  return std::nullopt;
}

// Minimum over every frame string s of -sum emission[t][s_t] plus the
// cheapest path of `reference` reading collapse(s). Labels 1..num_classes.
inline double FrameStringMinimum(const EmissionMatrix& em, const Wfst& reference) {
  const std::size_t tf = static_cast<std::size_t>(em.NumFrames());
  std::map<LabelString, double> best_ref;
  ForEachPath(reference, tf, [&](const Path& p) {
    auto [it, fresh] = best_ref.emplace(p.InputString(), p.total_weight.Value());
    if (!fresh) it->second = std::min(it->second, p.total_weight.Value());
  });
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : AllStrings(1, em.NumClasses(), tf)) {
    auto it = best_ref.find(CtcCollapse(s));
    if (it == best_ref.end()) continue;
    double w = it->second;
    for (std::size_t t = 0; t < tf; ++t) {
      w -= em.At(static_cast<int>(t), Lexicon::LabelToClass(s[t]));
    }
    best = std::min(best, w);
  }
  return best;
}

// Edit distance by recursion over every edit script, no memoization.
using SubCost = std::function<double(const std::string&, const std::string&)>;

inline double ExhaustiveEditCost(const std::vector<std::string>& a, std::size_t i,
                                 const std::vector<std::string>& b, std::size_t j,
                                 const SubCost& sub) {
  if (i == a.size()) return static_cast<double>(b.size() - j);
  if (j == b.size()) return static_cast<double>(a.size() - i);
  double best = 1.0 + ExhaustiveEditCost(a, i + 1, b, j, sub);
  best = std::min(best, 1.0 + ExhaustiveEditCost(a, i, b, j + 1, sub));
  const double s = a[i] == b[j] ? 0.0 : sub(a[i], b[j]);
  return std::min(best, s + ExhaustiveEditCost(a, i + 1, b, j + 1, sub));
}

}  // namespace dysfst::testing

#endif  // DYSFST_TESTS_ORACLES_H_
