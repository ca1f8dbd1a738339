// Copyright 2026 The chanalg Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace chanalg {

// Base of every error the library throws. The CLI maps the subclasses onto
// its exit codes (see tools/chanalg.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: shape mismatches, out-of-range parameters, malformed input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input does not describe a valid channel (bad Kraus shapes, not trace
// preserving where that is required).
class InvalidChannel : public Error {
 public:
  using Error::Error;
};

// The requested analysis is only defined for unital channels.
class UnsupportedAnalysis : public Error {
 public:
  using Error::Error;
};

// A numerical cross-check failed: ill-conditioned decomposition, a chain that
// is not monotone, or two routes to the same object that disagree.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace chanalg
