// Copyright 2026 The idts Authors
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

namespace idts {

// Programming-contract failures surface as exceptions; verdicts that are part
// of normal operation (rejected rules, positivity violations, fuel running
// out) are returned as data by the functions that produce them.

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PositionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StatusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rule well-formedness: condition 1 = head is a function symbol, condition 2
// = rhs (and condition) variables occur in the lhs, condition 3 = both sides
// have the same type.
struct RuleError : std::runtime_error {
  RuleError(int condition, const std::string& what)
      : std::runtime_error(what), condition(condition) {}
  int condition;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotARedex : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ArityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RecursorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EncodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Saturation-style operations that must terminate on well-behaved input but
// guard against runaways (normalization verdicts, by contrast, report fuel
// exhaustion as data).
struct FuelExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace idts
