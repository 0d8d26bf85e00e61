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

#ifndef DYSFST_COMPOSE_H_
#define DYSFST_COMPOSE_H_

#include "dysfst/wfst.h"

namespace dysfst {

// Composition with the three-state epsilon filter. The result maps x to z
// with weight w_l + w_r for every pair of paths left: x -> y, right: y -> z,
// and each such pair yields exactly one result path. Only states reachable
// from the start pairs are built.
//
// Throws ConfigError when left's output alphabet differs from right's input
// alphabet and StructuralError when either side lacks a start or accepting
// state.
Wfst Compose(const Wfst& left, const Wfst& right);

}  // namespace dysfst

#endif  // DYSFST_COMPOSE_H_
