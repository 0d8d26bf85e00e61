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

#ifndef DYSFST_WEIGHT_H_
#define DYSFST_WEIGHT_H_

#include <cmath>
#include <limits>
#include <ostream>

namespace dysfst {

// Tropical semiring over -log probabilities: Plus is min, Times is +.
// Zero() (+inf) is the impossible weight, One() (0) the certain one.
class TropicalWeight {
 public:
  constexpr TropicalWeight() = default;
  constexpr explicit TropicalWeight(double value) : value_(value) {}

  static constexpr TropicalWeight Zero() {
    return TropicalWeight(std::numeric_limits<double>::infinity());
  }
  static constexpr TropicalWeight One() { return TropicalWeight(0.0); }

  // -log(p); p == 0 maps to Zero().
  static TropicalWeight FromProbability(double p) {
    if (!(p > 0.0)) return Zero();
    return TropicalWeight(-std::log(p));
  }

  constexpr double Value() const { return value_; }
  constexpr bool IsZero() const {
    return value_ == std::numeric_limits<double>::infinity();
  }

  friend constexpr bool operator==(TropicalWeight a, TropicalWeight b) {
    return a.value_ == b.value_;
  }
  friend constexpr bool operator<(TropicalWeight a, TropicalWeight b) {
    return a.value_ < b.value_;
  }

 private:
  double value_ = std::numeric_limits<double>::infinity();
};

constexpr TropicalWeight Plus(TropicalWeight a, TropicalWeight b) {
  return b < a ? b : a;
}

constexpr TropicalWeight Times(TropicalWeight a, TropicalWeight b) {
  if (a.IsZero() || b.IsZero()) return TropicalWeight::Zero();
  return TropicalWeight(a.Value() + b.Value());
}

inline std::ostream& operator<<(std::ostream& os, TropicalWeight w) {
  return os << w.Value();
}

}  // namespace dysfst

#endif  // DYSFST_WEIGHT_H_
