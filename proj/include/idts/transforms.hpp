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

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "idts/rewrite.hpp"
#include "idts/signature.hpp"

namespace idts {

// Structural recursion operators for one class of mutually inductive types
// and one concrete target type. Each class member s gets a fresh symbol
// rec_<s>_<target mangle> taking one branch argument per constructor of the
// whole class (in declaration order) and the scrutinee last; branch
// arguments receive the constructor arguments followed by one inductive
// hypothesis per recursive argument.
struct RecursorBundle {
  std::vector<std::string> class_members;           // declaration order
  Type target;
  // member -> recursor symbol name, in class_members order.
  std::vector<std::pair<std::string, std::string>> recursors;
  // constructor -> branch argument type, whole-class declaration order.
  std::vector<std::pair<std::string, Type>> branches;
  // Input declarations plus the recursor symbols, sealed.
  std::shared_ptr<const Signature> extended;
  std::vector<Rule> rules;          // one defining rule per constructor
  bool reused_existing = false;     // symbols were already declared
};

// Throws RecursorError when the class is unknown or not strictly positive,
// or when a previously declared symbol clashes with the generated one.
// Regenerating for the same (class, target) reuses the declarations.
RecursorBundle generate_recursors(const Signature& sig,
                                  const std::string& class_member,
                                  const Type& target);

// A curried alias: <f>_c of arity 0 and f's full type, defined by the one
// rule <f>_c --> \x1...\xn. f(x1,...,xn), placed strictly above f in the
// precedence.
struct CurrifyResult {
  std::string symbol;   // the symbol that was curried
  std::string curried;  // the new arity-0 companion
  std::shared_ptr<const Signature> extended;
  Rule rule;
  bool reused_existing = false;
};

// Throws ArityError for arity-0 symbols.
CurrifyResult currify(const Signature& sig, const std::string& symbol);

// Replaces every conditional rule l --> r if u1 = v1, ..., un = vn by
//   l --> eq<n>_<types>(u1, v1, ..., un, vn, r)
//   eq<n>_<types>(x1, x1, ..., xn, xn, z) --> z
// with one eq symbol per (n, condition types, result type) signature,
// placed below every other symbol in the precedence. Unconditional rules
// pass through unchanged.
struct EncodeResult {
  std::shared_ptr<const Signature> extended;
  std::vector<Rule> rules;
  std::vector<std::string> eq_symbols;  // newly declared, in first-use order
};

// Throws EncodingError when a condition uses a variable that is not free in
// the left-hand side.
EncodeResult encode_conditional(const Signature& sig,
                                const std::vector<Rule>& rules);

}  // namespace idts
