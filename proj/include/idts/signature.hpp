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
#include <optional>
#include <string>
#include <vector>

#include "idts/term.hpp"
#include "idts/type.hpp"

namespace idts {

// A status describes how recursive-call arguments are compared: a
// lexicographic sequence of multiset groups of argument indices (1-based).
// Indices are pairwise distinct across the whole status.
struct Status {
  std::vector<std::vector<int>> groups;

  int arity() const;  // greatest index mentioned
  bool operator==(const Status& o) const { return groups == o.groups; }

  static Status default_for(int n_args);  // lex(mul 1, ..., mul n)
};

std::string to_string(const Status& s);

struct ConstructorDecl {
  std::string name;
  std::vector<Type> arg_types;
  std::string inductive;  // result type name
};

// Every symbol, constructor or defined, has a fixed arity and a status.
struct FunctionDecl {
  std::string name;
  Type type;                    // full declared type
  int arity = 0;
  std::vector<Type> arg_types;  // first `arity` argument types
  Type result;                  // type after consuming `arity` arguments
  Status status;
  bool is_constructor = false;
  std::string inductive;  // constructors: the type they belong to
};

struct PositivityViolation {
  std::string constructor;
  int arg_index = 0;  // 1-based argument of the constructor
  std::string reason;
  std::optional<TypePos> negative_position;  // within the argument type
};

struct PositivityInfo {
  bool strictly_positive = false;
  bool basic = false;
  std::vector<PositivityViolation> violations;
};

// Quasi-order on inductive types: s depends on t when t occurs in the type
// of a constructor of s; reflexive-transitive closure, with equivalence
// classes and a strict part between classes.
struct DependencyOrder {
  std::vector<std::vector<std::string>> classes;
  std::map<std::string, int> class_of;
  // reach[a][b]: class a depends on class b (reflexive).
  std::vector<std::vector<bool>> reach;

  bool geq(const std::string& s, const std::string& t) const;
  bool equiv(const std::string& s, const std::string& t) const;
  bool greater(const std::string& s, const std::string& t) const;
};

// Two grades of findings. `errors` are structural: the declarations do not
// make sense (unknown types, malformed statuses, precedence over unknown
// symbols) and nothing downstream can run. `verdict_failures` are negative
// verdicts on well-formed declarations: positivity violations, precedence
// cycles, unequal statuses inside an equivalence class. A signature with
// only verdict failures still seals, so rules can be elaborated and the
// failures reported alongside the rule verdicts.
struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> verdict_failures;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
  bool ok() const { return errors.empty(); }
  bool accepted() const { return errors.empty() && verdict_failures.empty(); }
};

// Declaration container. Mutable while building; seal() validates and
// freezes it, computing the dependency order, positivity classification and
// precedence closure that the checkers consult.
class Signature {
 public:
  // Construction (throws ValidationError once sealed).
  void declare_inductive(const std::string& name);
  void declare_constructor(const std::string& inductive, const std::string& name,
                           const std::vector<Type>& arg_types);
  void declare_symbol(const std::string& name, Type type, int arity,
                      std::optional<Status> status = std::nullopt);
  void add_precedence_greater(const std::string& a, const std::string& b);
  void add_precedence_equiv(const std::string& a, const std::string& b);
  void set_allow_constructor_rules(bool v) { allow_constructor_rules_ = v; }
  void set_allow_non_strictly_positive(bool v) {
    allow_non_strictly_positive_ = v;
  }

  // Checks everything checkable without rules: declaration sanity, statuses,
  // precedence acyclicity, equal statuses inside precedence classes, and
  // strict positivity of every inductive type.
  ValidationReport validate() const;

  // Validates and freezes. Throws ValidationError on structural errors;
  // verdict failures do not block sealing and stay readable through
  // validation(). Safe to call once; later mutations throw.
  void seal();
  bool sealed() const { return sealed_; }

  // The report computed at seal time.
  const ValidationReport& validation() const;

  // Unsealed copy carrying the same declarations, for transforms that
  // extend a signature rather than mutate it.
  Signature fork() const;

  // Queries (most require a sealed signature).
  bool has_inductive(const std::string& name) const;
  bool has_symbol(const std::string& name) const;
  const FunctionDecl& decl(const std::string& name) const;
  bool is_constructor(const std::string& name) const;
  const std::vector<std::string>& constructors_of(const std::string& ind) const;
  const std::vector<std::string>& inductives() const { return inductive_order_; }
  std::vector<std::string> symbols() const;

  const DependencyOrder& dependency() const;
  const PositivityInfo& positivity(const std::string& ind) const;
  // Inductive type that is strictly positive (the argument-ordering test).
  bool is_sp_inductive(const Type& t) const;
  bool is_basic_type(const Type& t) const;

  bool prec_greater(const std::string& f, const std::string& g) const;
  bool prec_equiv(const std::string& f, const std::string& g) const;

  bool allow_constructor_rules() const { return allow_constructor_rules_; }
  bool allow_non_strictly_positive() const {
    return allow_non_strictly_positive_;
  }

  // Term construction against this signature.
  TermPtr make_fun(const std::string& symbol,
                   std::vector<TermPtr> args) const;

  // Precedence edges as declared (for printing round-trips).
  const std::vector<std::pair<std::string, std::string>>& declared_greater()
      const {
    return prec_greater_decl_;
  }
  const std::vector<std::pair<std::string, std::string>>& declared_equiv()
      const {
    return prec_equiv_decl_;
  }

 private:
  void mutable_guard() const;
  PositivityInfo compute_positivity(const std::string& ind,
                                    const DependencyOrder& dep) const;
  DependencyOrder compute_dependency() const;
  void compute_precedence(ValidationReport& report) const;

  std::vector<std::string> inductive_order_;
  std::map<std::string, std::vector<std::string>> ctors_by_ind_;
  std::map<std::string, FunctionDecl> symbols_;
  std::vector<std::string> symbol_order_;
  std::vector<std::pair<std::string, std::string>> prec_greater_decl_;
  std::vector<std::pair<std::string, std::string>> prec_equiv_decl_;
  bool allow_constructor_rules_ = false;
  bool allow_non_strictly_positive_ = false;

  bool sealed_ = false;
  DependencyOrder dep_;
  std::map<std::string, PositivityInfo> positivity_;
  ValidationReport report_;
  // Precedence closure over symbol classes.
  mutable std::map<std::string, int> prec_class_;
  mutable std::vector<std::vector<bool>> prec_reach_;  // strict, transitive
};

// Status well-formedness for a declared symbol: indices within arity,
// pairwise distinct, each multiset group over arguments of one type.
// Throws StatusError.
void check_status(const Status& st, const FunctionDecl& fd);

}  // namespace idts
