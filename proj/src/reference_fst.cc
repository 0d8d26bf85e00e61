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

#include "dysfst/reference_fst.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dysfst/error.h"

namespace dysfst {

SeverityConfig::SeverityConfig(double beta) : beta_(beta) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw ConfigError("beta must be a positive finite number");
  }
  err0_ = std::pow(10.0, -beta);
  alpha_ = 1.0 - err0_;
}

double SeverityConfig::Err(int distance) const {
  static const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const double x = static_cast<double>(distance);
  return err0_ * kInvSqrt2Pi * std::exp(-x * x / 2.0);
}

const char* ArcFamilyName(ArcFamily family) {
  switch (family) {
    case ArcFamily::kForward: return "forward";
    case ArcFamily::kBackward: return "backward";
    case ArcFamily::kSkip: return "skip";
    case ArcFamily::kFreeInsertion: return "free-insertion";
  }
  return "unknown";
}

ReferenceFst::ReferenceFst(Wfst machine, PhonemeSequence reference,
                           std::vector<TransitionRecord> records,
                           std::vector<std::string> warnings)
    : machine_(std::move(machine)),
      reference_(std::move(reference)),
      records_(std::move(records)),
      warnings_(std::move(warnings)) {}

const TransitionRecord& ReferenceFst::Decode(Label olabel) const {
  if (olabel < 1 || static_cast<std::size_t>(olabel) > records_.size()) {
    throw std::out_of_range("reference output label " +
                            std::to_string(olabel) + " has no record");
  }
  return records_[olabel - 1];
}

std::optional<Label> ReferenceFst::Encode(StateId src, StateId dst,
                                          Label phoneme) const {
  auto name = std::to_string(src) + "<trans>" + std::to_string(dst) + ":";
  if (!machine_.InputSymbols().Contains(phoneme)) return std::nullopt;
  return machine_.OutputSymbols().Find(name +
                                       machine_.InputSymbols().Symbol(phoneme));
}

std::size_t ReferenceFst::CountArcs(ArcFamily family) const {
  std::size_t n = 0;
  for (const auto& r : records_) n += (r.family == family);
  return n;
}

bool ReferenceFst::IsLinear() const {
  const StateId final_state = NumReferencePhonemes();
  for (StateId s = 0; s < machine_.NumStates(); ++s) {
    if (machine_.IsFinal(s) != (s == final_state)) return false;
    for (const Arc& a : machine_.Arcs(s)) {
      if (Decode(a.olabel).family != ArcFamily::kForward) return false;
    }
  }
  return true;
}

std::string ReferenceFst::RecordName(const TransitionRecord& r,
                                     const Lexicon& lexicon) {
  return std::to_string(r.src) + "<trans>" + std::to_string(r.dst) + ":" +
         lexicon.Symbol(r.phoneme);
}

ReferenceFst BuildReferenceFst(const PhonemeSequence& reference,
                               const Lexicon& lexicon,
                               const SeverityConfig& config,
                               const ReferenceFstOptions& options) {
  if (reference.empty()) throw InputError("reference phoneme sequence is empty");
  const std::vector<Label> ref = lexicon.Ids(reference);
  const int num_ref = static_cast<int>(ref.size());

  struct Pending {
    TransitionRecord record;
    TropicalWeight weight;
  };
  std::vector<Pending> pending;
  auto add = [&](StateId src, StateId dst, Label phoneme, ArcFamily family,
                 int ref_position, int distance, double probability) {
    TropicalWeight w = TropicalWeight::FromProbability(probability);
    if (w.IsZero()) return;
    pending.push_back(
        {{src, dst, phoneme, family, ref_position, distance}, w});
  };

  for (int j = 0; j <= num_ref; ++j) {
    if (j < num_ref) {
      add(j, j + 1, ref[j], ArcFamily::kForward, j, 0, config.Alpha());
    }
    for (int m = 0; m + 1 < j; ++m) {
      add(j, m + 1, ref[m], ArcFamily::kBackward, m, j - m,
          config.Err(j - m));
    }
    for (int k = j + 1; k < num_ref; ++k) {
      add(j, k + 1, ref[k], ArcFamily::kSkip, k, k - j, config.Err(k - j));
    }
    if (options.free_insertion_arcs) {
      for (int c = 1; c < lexicon.NumClasses(); ++c) {
        Label q = Lexicon::ClassToLabel(c);
        if (j < num_ref && q == ref[j]) continue;
        add(j, j, q, ArcFamily::kFreeInsertion, -1, 1, config.Err(1));
      }
    }
  }

  auto out_symbols = std::make_shared<SymbolTable>();
  std::vector<TransitionRecord> records;
  records.reserve(pending.size());
  for (const auto& p : pending) {
    Label id = out_symbols->AddSymbol(ReferenceFst::RecordName(p.record, lexicon));
    if (static_cast<std::size_t>(id) != records.size() + 1) {
      throw std::logic_error("duplicate reference transition record");
    }
    records.push_back(p.record);
  }

  Wfst machine(lexicon.Symbols(), out_symbols);
  machine.AddStates(num_ref + 1);
  machine.AddStart(0);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const auto& r = pending[i].record;
    machine.AddArc(r.src, r.dst, r.phoneme, static_cast<Label>(i + 1),
                   pending[i].weight);
  }
  machine.SetFinal(num_ref, TropicalWeight::One());
  if (!options.strict_final) {
    for (int i = 0; i < num_ref; ++i) {
      TropicalWeight w = TropicalWeight::FromProbability(config.Err(num_ref - i));
      if (!w.IsZero()) machine.SetFinal(i, w);
    }
  }

  std::vector<std::string> warnings;
  if (config.Underflowed()) warnings.emplace_back(kBetaUnderflowWarning);
  return ReferenceFst(std::move(machine), reference, std::move(records),
                      std::move(warnings));
}

}  // namespace dysfst
