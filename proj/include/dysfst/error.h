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

#ifndef DYSFST_ERROR_H_
#define DYSFST_ERROR_H_

#include <stdexcept>
#include <string>

namespace dysfst {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Incompatible alphabets, bad option values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed machines: missing start/accept states, cycles where none are
// allowed, arcs pointing outside the state set.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Bad user data: unparsable files, unknown phonemes, NaN emissions.
class InputError : public Error {
 public:
  using Error::Error;
};

// A configured limit was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace dysfst

#endif  // DYSFST_ERROR_H_
