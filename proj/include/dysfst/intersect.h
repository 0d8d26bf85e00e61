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

#ifndef DYSFST_INTERSECT_H_
#define DYSFST_INTERSECT_H_

#include "dysfst/wfst.h"

namespace dysfst {

// Product of `machine` (matched on its input labels) with an epsilon-free
// acyclic acceptor, typically the per-frame emission acceptor. The result
// keeps machine's input and output labels and sums the weights. Input-epsilon
// arcs of `machine` advance without consuming a frame.
//
// Throws ConfigError on alphabet mismatch, StructuralError when `acceptor`
// has epsilon arcs or a cycle, or when the product contains a cycle (an
// epsilon cycle of `machine`); the message names the offending states.
Wfst Intersect(const Wfst& machine, const Wfst& acceptor);

}  // namespace dysfst

#endif  // DYSFST_INTERSECT_H_
