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

#include <map>
#include <string>
#include <vector>

#include "idts/rewrite.hpp"
#include "idts/signature.hpp"
#include "idts/term.hpp"

namespace idts {

// A term is s-positive when the inductive type s occurs positively in its
// type. The erasing function keeps s-positive material and collapses
// everything else to bottom constants.
bool s_positive(const Signature& sig, const TermPtr& u, const std::string& s);

// Subterm occurrences all of whose ancestors (the occurrence included) are
// s-positive; includes the root when the root qualifies.
std::vector<std::pair<TermPos, TermPtr>> s_positive_subterms(
    const Signature& sig, const TermPtr& u, const std::string& s);

// Owns the bottom constants: one arity-0 symbol per erased type, named with
// the reserved "_bot_" prefix (user input must not declare such names).
class ErasureContext {
 public:
  explicit ErasureContext(const Signature& sig, std::string s)
      : sig_(sig), s_(std::move(s)) {}

  const std::string& focus() const { return s_; }
  // _bot_<type mangle> constant of the given type.
  TermPtr bottom(const Type& t);
  // Types for which a bottom constant was created so far.
  const std::map<std::string, Type>& bottoms_used() const { return used_; }

  // The erasure homomorphism: identity on variables, structure-preserving
  // on abstractions, applications and symbol applications of s-positive
  // terms; bottom at any term that is not s-positive.
  TermPtr erase(const TermPtr& u);

 private:
  const Signature& sig_;
  std::string s_;
  std::map<std::string, Type> used_;  // mangled name -> type
};

// All rewrite reducts of u reachable through steps at s-positive
// occurrences, u included, deduplicated modulo alpha. Throws FuelExhausted
// when the set would exceed `fuel` elements.
std::vector<TermPtr> s_reducts(const RuleSystem& rs, const TermPtr& u,
                               const std::string& s, long fuel = 10000);

// One-step reducts at positions that are not s-positive occurrences.
std::vector<RewriteCandidate> co_s_step(const RuleSystem& rs, const TermPtr& u,
                                        const std::string& s);

}  // namespace idts
