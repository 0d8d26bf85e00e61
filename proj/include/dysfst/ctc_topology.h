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

#ifndef DYSFST_CTC_TOPOLOGY_H_
#define DYSFST_CTC_TOPOLOGY_H_

#include "dysfst/lexicon.h"
#include "dysfst/wfst.h"

namespace dysfst {

// CTC collapse as a transducer from frame labels to phonemes. State 0 means
// "last frame was blank (or nothing yet)", state c the last frame was class
// c. Moving to a new phoneme emits it; staying on a phoneme or reading blank
// emits epsilon. Every state accepts. All weights are One().
Wfst BuildCtcTopology(const Lexicon& lexicon);

}  // namespace dysfst

#endif  // DYSFST_CTC_TOPOLOGY_H_
