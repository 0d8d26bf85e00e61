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

#ifndef DYSFST_EMISSION_H_
#define DYSFST_EMISSION_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dysfst/lexicon.h"
#include "dysfst/wfst.h"

namespace dysfst {

inline constexpr float kDefaultFrameShiftMs = 20.0f;

// T x C frame-level log posteriors, row major.
class EmissionMatrix {
 public:
  EmissionMatrix() = default;
  EmissionMatrix(int num_frames, int num_classes, std::vector<float> values,
                 float frame_shift_ms = kDefaultFrameShiftMs,
                 std::string provenance = "memory");

  int NumFrames() const { return num_frames_; }
  int NumClasses() const { return num_classes_; }
  float FrameShiftMs() const { return frame_shift_ms_; }
  float At(int frame, int cls) const {
    return values_[static_cast<std::size_t>(frame) * num_classes_ + cls];
  }
  std::span<const float> Row(int frame) const {
    return {values_.data() + static_cast<std::size_t>(frame) * num_classes_,
            static_cast<std::size_t>(num_classes_)};
  }
  const std::vector<float>& Values() const { return values_; }
  std::vector<float>& MutableValues() { return values_; }

  // "file:<path>", "synthetic", "noisy(sigma=...,seed=...)" and so on.
  const std::string& Provenance() const { return provenance_; }
  void SetProvenance(std::string p) { provenance_ = std::move(p); }

  // Largest |logsumexp(row)| over all rows; 0 for T == 0.
  double MaxLogNormalizationError() const;

 private:
  int num_frames_ = 0;
  int num_classes_ = 0;
  float frame_shift_ms_ = kDefaultFrameShiftMs;
  std::vector<float> values_;
  std::string provenance_ = "memory";
};

inline constexpr double kLogNormTolerance = 1e-3;

// Throws InputError naming the first row whose |logsumexp| exceeds tol.
void CheckLogNormalized(const EmissionMatrix& emission,
                        double tol = kLogNormTolerance);

// Binary format: "DWEM1", u32 T, u32 C, f32 frame_shift_ms, then T*C f32
// row major, all little endian.
void WriteEmissionBinary(const EmissionMatrix& emission, std::ostream& os);
EmissionMatrix ReadEmissionBinary(std::istream& is,
                                  const std::string& source = "<stream>");
// {"frame_shift_ms": 20, "logits": [[...], ...]}; frame_shift_ms optional.
EmissionMatrix ParseEmissionJson(const std::string& text,
                                 const std::string& source = "<string>");
// Inverse of ParseEmissionJson; -inf is written as the string "-inf".
std::string EmissionToJson(const EmissionMatrix& emission);
// Sniffs the magic bytes and dispatches to the binary or JSON reader.
EmissionMatrix ReadEmissionFile(const std::string& path);
void WriteEmissionFile(const EmissionMatrix& emission, const std::string& path);

// Linear acceptor with T + 1 states; from t to t + 1 one arc per class c
// with weight -emission[t][c]. Classes with -inf log posterior get no arc.
// Throws InputError on NaN or a class count mismatch.
Wfst BuildEmissionAcceptor(const EmissionMatrix& emission,
                           const Lexicon& lexicon);

}  // namespace dysfst

#endif  // DYSFST_EMISSION_H_
