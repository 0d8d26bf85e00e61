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

#include "dysfst/metrics.h"

#include <algorithm>
#include <limits>
#include <map>

#include "dysfst/error.h"

namespace dysfst {

PhonemeSequence EditAlignment::Apply(const PhonemeSequence& ref,
                                     const PhonemeSequence& hyp) const {
  PhonemeSequence out;
  for (const EditStep& s : steps) {
    switch (s.op) {
      case EditOp::kMatch:
        out.push_back(ref[s.ref_index]);
        break;
      case EditOp::kSubstitute:
      case EditOp::kInsert:
        out.push_back(hyp[s.hyp_index]);
        break;
      case EditOp::kDelete:
        break;
    }
  }
  return out;
}

EditAlignment Align(const PhonemeSequence& ref, const PhonemeSequence& hyp,
                    const SubstitutionCost& sub_cost) {
  const std::size_t n = ref.size(), m = hyp.size();
  const std::size_t w = m + 1;
  std::vector<double> d((n + 1) * w, 0.0);
  std::vector<double> sub(n * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      sub[i * m + j] = ref[i] == hyp[j] ? 0.0 : sub_cost(ref[i], hyp[j]);
    }
  }
  for (std::size_t i = 1; i <= n; ++i) d[i * w] = static_cast<double>(i);
  for (std::size_t j = 1; j <= m; ++j) d[j] = static_cast<double>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      d[i * w + j] = std::min({d[(i - 1) * w + j - 1] + sub[(i - 1) * m + j - 1],
                               d[(i - 1) * w + j] + 1.0, d[i * w + j - 1] + 1.0});
    }
  }

  EditAlignment out;
  out.cost = d[n * w + m];
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const double here = d[i * w + j];
    if (i > 0 && j > 0 &&
        here == d[(i - 1) * w + j - 1] + sub[(i - 1) * m + j - 1]) {
      const double c = sub[(i - 1) * m + j - 1];
      const bool same = ref[i - 1] == hyp[j - 1];
      out.steps.push_back({same ? EditOp::kMatch : EditOp::kSubstitute,
                           static_cast<int>(i - 1), static_cast<int>(j - 1), c});
      if (!same) ++out.substitutions;
      --i;
      --j;
    } else if (i > 0 && here == d[(i - 1) * w + j] + 1.0) {
      out.steps.push_back({EditOp::kDelete, static_cast<int>(i - 1), -1, 1.0});
      ++out.deletions;
      --i;
    } else {
      out.steps.push_back({EditOp::kInsert, -1, static_cast<int>(j - 1), 1.0});
      ++out.insertions;
      --j;
    }
  }
  std::reverse(out.steps.begin(), out.steps.end());
  return out;
}

EditAlignment UnitAlignment(const PhonemeSequence& ref,
                            const PhonemeSequence& hyp) {
  return Align(ref, hyp, [](std::string_view, std::string_view) { return 1.0; });
}

EditAlignment WeightedAlignment(const PhonemeSequence& ref,
                                const PhonemeSequence& hyp,
                                const SimilarityMatrix& sim) {
  for (const auto* seq : {&ref, &hyp}) {
    for (const auto& p : *seq) {
      if (!sim.Index(p)) {
        throw InputError("phoneme '" + p + "' is not in the similarity matrix");
      }
    }
  }
  return Align(ref, hyp, [&sim](std::string_view a, std::string_view b) {
    return 1.0 - sim.Similarity(a, b);
  });
}

namespace {

void RequireReference(const PhonemeSequence& ref) {
  if (ref.empty()) throw InputError("error rate: empty reference");
}

}  // namespace

double Per(const PhonemeSequence& ref, const PhonemeSequence& hyp) {
  RequireReference(ref);
  return UnitAlignment(ref, hyp).cost / static_cast<double>(ref.size());
}

double Wper(const PhonemeSequence& ref, const PhonemeSequence& hyp,
            const SimilarityMatrix& sim) {
  RequireReference(ref);
  return WeightedAlignment(ref, hyp, sim).cost /
         static_cast<double>(ref.size());
}

void ErrorRateAccumulator::Add(const PhonemeSequence& ref,
                               const PhonemeSequence& hyp) {
  RequireReference(ref);
  unit_cost_ += UnitAlignment(ref, hyp).cost;
  weighted_cost_ += WeightedAlignment(ref, hyp, *sim_).cost;
  ref_length_ += ref.size();
  ++utterances_;
}

double ErrorRateAccumulator::Per() const {
  if (utterances_ == 0) throw InputError("error rate: empty corpus");
  return unit_cost_ / static_cast<double>(ref_length_);
}

double ErrorRateAccumulator::Wper() const {
  if (utterances_ == 0) throw InputError("error rate: empty corpus");
  return weighted_cost_ / static_cast<double>(ref_length_);
}

std::vector<DysfluencyEvent> EventsFromDetection(const DetectionResult& det) {
  std::vector<DysfluencyEvent> out;
  for (const auto& a : det.annotations) {
    if (a.type == DysfluencyType::kRepetition ||
        a.type == DysfluencyType::kInsertion) {
      out.push_back({a.type, a.segment.start_state});
    }
  }
  for (const auto& d : det.deleted) {
    out.push_back({DysfluencyType::kDeletion, d.ref_position});
  }
  return out;
}

const char* AccuracyDefinition(AccuracyLevel level) {
  switch (level) {
    case AccuracyLevel::kCount:
      return "count-level: per type, sum over utterances of min(hyp, gold) "
             "divided by sum of gold";
    case AccuracyLevel::kPosition:
      return "position-level: per type, sum over utterances of matched "
             "(type, reference position) events divided by sum of gold";
  }
  return "";
}

void DetectionAccumulator::Add(const std::vector<DysfluencyEvent>& gold,
                               const std::vector<DysfluencyEvent>& hyp) {
  for (DysfluencyType t : kScoredTypes) {
    std::map<int, std::size_t> g, h;
    std::size_t ng = 0, nh = 0;
    for (const auto& e : gold) {
      if (e.type == t) ++g[e.ref_position], ++ng;
    }
    for (const auto& e : hyp) {
      if (e.type == t) ++h[e.ref_position], ++nh;
    }
    TypeTally& tally = tallies_[static_cast<int>(t)];
    tally.gold += ng;
    tally.hyp += nh;
    if (level_ == AccuracyLevel::kCount) {
      tally.matched += std::min(ng, nh);
    } else {
      for (const auto& [pos, c] : g) {
        auto it = h.find(pos);
        if (it != h.end()) tally.matched += std::min(c, it->second);
      }
    }
  }
}

const TypeTally& DetectionAccumulator::Tally(DysfluencyType type) const {
  return tallies_[static_cast<int>(type)];
}

std::optional<double> DetectionAccumulator::Accuracy(DysfluencyType type) const {
  const TypeTally& t = Tally(type);
  if (t.gold == 0) return std::nullopt;
  return static_cast<double>(t.matched) / static_cast<double>(t.gold);
}

}  // namespace dysfst
