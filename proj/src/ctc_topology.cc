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

#include "dysfst/ctc_topology.h"

namespace dysfst {

Wfst BuildCtcTopology(const Lexicon& lexicon) {
  Wfst ctc(lexicon.Symbols(), lexicon.Symbols());
  const int num_classes = lexicon.NumClasses();
  ctc.AddStates(num_classes);
  ctc.AddStart(0);
  for (int s = 0; s < num_classes; ++s) {
    ctc.SetFinal(s);
    for (int d = 0; d < num_classes; ++d) {
      Label frame = Lexicon::ClassToLabel(d);
      Label out = (d == s || frame == Lexicon::kBlank) ? kEpsilon : frame;
      ctc.AddArc(s, d, frame, out, TropicalWeight::One());
    }
  }
  return ctc;
}

}  // namespace dysfst
