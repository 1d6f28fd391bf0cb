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
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace idts {

// Simple types over named inductive types: s ::= iota | s -> t.
// Immutable value type; equality is structural.
class Type {
 public:
  Type() = default;  // null state, only for default-constructed containers

  static Type ind(std::string name);
  static Type arrow(Type domain, Type codomain);

  bool is_null() const { return n_ == nullptr; }
  bool is_ind() const;
  bool is_arrow() const;
  const std::string& ind_name() const;
  Type domain() const;
  Type codomain() const;

  // Splits exactly n leading arrows into argument types plus remainder.
  // Empty result if the type has fewer than n arrows.
  std::optional<std::pair<std::vector<Type>, Type>> split(int n) const;

  // Maximal decomposition s1 -> ... -> sn -> base.
  std::pair<std::vector<Type>, Type> peel() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Positions into a type, words over {1,2}: 1 descends into the domain of an
// arrow, 2 into the codomain. The empty word addresses the type itself.
using TypePos = std::vector<int>;

// Positions of inductive-type leaves, split by polarity. A leaf position is
// positive iff it passes through an even number of domain (1) steps.
std::set<TypePos> positive_positions(const Type& s);
std::set<TypePos> negative_positions(const Type& s);

// Subexpression at p, or nothing if p does not address one.
std::optional<Type> type_at(const Type& s, const TypePos& p);

bool occurs(const std::string& ind, const Type& s);

// ind occurs in s and every occurrence is at a positive position.
bool occurs_positively(const std::string& ind, const Type& s);

// s decomposes as s1 -> ... -> sn -> ind with ind absent from every si.
bool occurs_strictly_positively(const std::string& ind, const Type& s);

std::string to_string(const Type& s);

// Identifier-safe spelling of a type, for generated symbol names:
// arrows become "_to_", parentheses L/R. nat -> ord gives "nat_to_ord".
std::string type_mangle(const Type& s);

}  // namespace idts
