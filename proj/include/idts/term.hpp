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
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "idts/type.hpp"

namespace idts {

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Terms of the calculus: variables, typed abstractions, applications, and
// function-symbol applications at the symbol's exact declared arity.
//
// Terms are immutable and always well-typed: every factory validates and the
// node caches its type. Named representation; alpha-equivalent terms are the
// same term for every operation in this library, with alpha_equal as the
// equality test and canonical_key for use as a map key.
class Term {
 public:
  enum class Kind { Var, Abs, App, Fun };

  Kind kind() const { return kind_; }
  const Type& type() const { return type_; }

  // Var: the variable name. Abs: the binder name. Fun: the symbol name.
  const std::string& name() const { return name_; }

  const Type& binder_type() const;   // Abs
  const TermPtr& body() const;       // Abs
  const TermPtr& fn() const;         // App
  const TermPtr& arg() const;        // App
  const std::vector<TermPtr>& args() const;  // Fun

  size_t node_count() const { return nodes_; }

  static TermPtr var(std::string name, Type t);
  static TermPtr abs(std::string binder, Type binder_type, TermPtr body);
  static TermPtr app(TermPtr f, TermPtr a);  // TypeError on domain mismatch
  // Validates arity and argument types against the declaration data.
  static TermPtr fun(std::string symbol, const std::vector<Type>& arg_types,
                     Type result, std::vector<TermPtr> args);
  // Rebuild path for internal structure-preserving edits; checks arity only.
  static TermPtr fun_raw(std::string symbol, Type result,
                         std::vector<TermPtr> args);

 private:
  Term() = default;
  Kind kind_ = Kind::Var;
  Type type_;
  std::string name_;
  Type binder_type_;
  std::vector<TermPtr> kids_;
  size_t nodes_ = 1;
};

bool alpha_equal(const TermPtr& a, const TermPtr& b);

std::set<std::string> free_vars(const TermPtr& t);
bool has_free_var(const TermPtr& t, const std::string& name);
// Free variables with their types (first occurrence wins).
std::map<std::string, Type> free_vars_typed(const TermPtr& t);

// Stable text form with bound variables numbered; alpha-equal terms and only
// those share a key. Suitable as a hash/map key.
std::string canonical_key(const TermPtr& t);

// Positions are Dewey words over child indices starting at 1:
// Abs body = 1; App function = 1, argument = 2; Fun argument i = i.
using TermPos = std::vector<int>;

std::vector<TermPos> all_positions(const TermPtr& t);  // preorder
// Subterm at p; bound variables along the path become free in the result.
TermPtr subterm_at(const TermPtr& t, const TermPos& p);  // PositionError
// Replaces the subterm at p, requiring the replacement to have its type.
TermPtr replace_at(const TermPtr& t, const TermPos& p, const TermPtr& repl);

std::string position_to_string(const TermPos& p);

// Finite map from variable names to terms; identity bindings are dropped.
class Substitution {
 public:
  void bind(const std::string& var, TermPtr image);
  const TermPtr* lookup(const std::string& var) const;
  bool empty() const { return map_.empty(); }
  size_t size() const { return map_.size(); }
  const std::map<std::string, TermPtr>& entries() const { return map_; }

 private:
  std::map<std::string, TermPtr> map_;
};

// Capture-avoiding; renames binders away from the free variables of images.
// TypeError if an image's type differs from its variable's type.
TermPtr substitute(const TermPtr& t, const Substitution& theta);

// Smallest base/base_1/base_2/... not in `avoid`.
std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid);

std::string to_string(const TermPtr& t);

}  // namespace idts
