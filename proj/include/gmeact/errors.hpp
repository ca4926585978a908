// Copyright 2026 The gmeact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace gmeact {

// Shape or dimension disagreement between operands.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A local projection annihilated the state; there is nothing to normalize.
class ZeroNormalization : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LpInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LpUnbounded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a cross-check between two independent routes disagrees.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gmeact
