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

#include "dysfst/synthetic.h"

#include <charconv>
#include <cmath>
#include <random>

#include "dysfst/error.h"

namespace dysfst {

PhonemeSequence GoldLabels::SpokenPhonemes() const {
  PhonemeSequence out;
  for (const auto& g : spoken) out.push_back(g.phoneme);
  return out;
}

std::vector<DysfluencyEvent> GoldLabels::Events() const {
  std::vector<DysfluencyEvent> out;
  for (const auto& g : spoken) {
    if (g.type != DysfluencyType::kNormal) out.push_back({g.type, g.ref_position});
  }
  for (const auto& d : deleted) {
    out.push_back({DysfluencyType::kDeletion, d.ref_position});
  }
  return out;
}

GoldLabels ExpandPlan(const PhonemeSequence& reference,
                      const std::vector<PlanEdit>& plan) {
  const int s = static_cast<int>(reference.size());
  std::vector<bool> deleted(s, false);
  // Material spoken right after r_p, by p.
  std::vector<std::vector<GoldPhoneme>> after(s);
  std::vector<bool> touched(s, false);
  auto claim = [&](int p, const char* what) {
    if (p < 0 || p >= s) {
      throw InputError(std::string(what) + ": position " + std::to_string(p) +
                       " outside reference of length " + std::to_string(s));
    }
    if (touched[p]) {
      throw InputError(std::string(what) + ": overlapping edit at position " +
                       std::to_string(p));
    }
    touched[p] = true;
  };
  for (const PlanEdit& e : plan) {
    switch (e.kind) {
      case PlanEdit::Kind::kRepeat: {
        if (e.length < 1 || e.times < 1) {
          throw InputError("repeat: length and times must be >= 1");
        }
        for (int p = e.position; p < e.position + e.length; ++p) claim(p, "repeat");
        auto& tail = after[e.position + e.length - 1];
        for (int k = 0; k < e.times; ++k) {
          for (int p = e.position; p < e.position + e.length; ++p) {
            tail.push_back({reference[p], DysfluencyType::kRepetition, p});
          }
        }
        break;
      }
      case PlanEdit::Kind::kDelete:
        claim(e.position, "delete");
        deleted[e.position] = true;
        break;
      case PlanEdit::Kind::kInsertBackjump:
        claim(e.position, "insert_backjump");
        if (e.position < 1) {
          throw InputError("insert_backjump: position must be >= 1");
        }
        after[e.position].push_back(
            {reference[e.position - 1], DysfluencyType::kInsertion,
             e.position - 1});
        break;
    }
  }
  GoldLabels gold;
  for (int p = 0; p < s; ++p) {
    if (deleted[p]) {
      gold.deleted.push_back({p, reference[p]});
      continue;
    }
    gold.spoken.push_back({reference[p], DysfluencyType::kNormal, p});
    for (auto& g : after[p]) gold.spoken.push_back(std::move(g));
  }
  if (gold.spoken.empty()) throw InputError("plan leaves nothing spoken");
  return gold;
}

SyntheticUtterance Synthesize(const SyntheticSpec& spec,
                              const Lexicon& lexicon) {
  if (spec.frames_per_phoneme < 1 || spec.blank_frames < 0) {
    throw InputError("synthesize: frames_per_phoneme >= 1, blank_frames >= 0");
  }
  if (!(spec.confidence > 0.0 && spec.confidence < 1.0)) {
    throw InputError("synthesize: confidence must be in (0, 1)");
  }
  GoldLabels gold = ExpandPlan(spec.reference, spec.plan);
  const int c = lexicon.NumClasses();
  std::vector<int> classes;
  for (std::size_t i = 0; i < gold.spoken.size(); ++i) {
    if (i > 0) classes.insert(classes.end(), spec.blank_frames, 0);
    int cls = Lexicon::LabelToClass(lexicon.Id(gold.spoken[i].phoneme));
    classes.insert(classes.end(), spec.frames_per_phoneme, cls);
  }
  const float hit = static_cast<float>(std::log(spec.confidence));
  const float miss =
      static_cast<float>(std::log((1.0 - spec.confidence) / (c - 1)));
  std::vector<float> values;
  values.reserve(classes.size() * c);
  for (int cls : classes) {
    for (int k = 0; k < c; ++k) values.push_back(k == cls ? hit : miss);
  }
  EmissionMatrix em(static_cast<int>(classes.size()), c, std::move(values));
  em.SetProvenance("synthetic");
  return {std::move(em), std::move(gold)};
}

EmissionMatrix InjectNoise(const EmissionMatrix& emission, double sigma,
                           std::uint64_t seed) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ConfigError("noise sigma must be finite and >= 0");
  }
  if (sigma == 0.0) return emission;
  EmissionMatrix out = emission;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  for (float& v : out.MutableValues()) {
    v = static_cast<float>(v + sigma * z(rng));
  }
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, sigma);
  out.SetProvenance(emission.Provenance() + "+noise(sigma=" +
                    std::string(buf, res.ptr) + ",unnormalized)");
  return out;
}

}  // namespace dysfst
