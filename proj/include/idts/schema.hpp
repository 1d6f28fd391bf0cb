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

#include "idts/rewrite.hpp"
#include "idts/signature.hpp"
#include "idts/term.hpp"

namespace idts {

struct Derivation;

// Witness for the argument ordering u > v. Either a constructor-path
// witness (v alpha-equals u|_p applied to `applied`, every proper prefix of
// p constructor-headed) or a strict-subterm witness (v alpha-equals u|_p
// with no variable captured along the path, `applied` empty).
struct ArgCompare {
  TermPtr left;
  TermPtr right;
  bool constructor_path = false;
  TermPos position;
  std::vector<TermPtr> applied;
  // Closure derivations for `applied`, present when this comparison was used
  // inside a recursive-call check (the closure side condition).
  std::vector<Derivation> applied_closure;
};

// One status group compared as multisets: either the two multisets are
// alpha-equal, or the left is strictly greater with one domination witness
// per remaining right element.
struct GroupEvidence {
  std::vector<int> indices;  // 1-based argument positions of the group
  bool equal = false;
  std::vector<ArgCompare> dominations;
};

// Self-contained record of a status comparison l⃗ > u⃗: groups up to and
// including the first strictly decreasing one.
struct StatusEvidence {
  Status status;
  std::vector<TermPtr> left;
  std::vector<TermPtr> right;
  std::vector<GroupEvidence> groups;
  int deciding_group = -1;  // index into `groups` of the strict decrease
};

// Checkable certificate tree. `clause` is one of Acc1..Acc5 (accessibility)
// or CC1..CC6 (closure membership); each node justifies `term` from its
// children per the clause definitions, so a report can be re-validated
// without rerunning the search.
struct Derivation {
  std::string clause;
  TermPtr term;
  std::string symbol;                       // CC5/CC6 head symbol
  int seed_index = -1;                      // CC2: which lhs argument
  std::vector<Derivation> subs;
  std::optional<StatusEvidence> status_cmp;  // CC6
};

std::string to_string(const Derivation& d);
// Compact one-line form of the root node, e.g.
// CC6[map] { args: CC2, CC2; status lex(mul 1, mul 2): eq, mul-dec }.
std::string summary_line(const Derivation& d);

// Accessible subterms of a seed term: the least set containing the seed and
// closed under abstraction bodies, constructor arguments, removal of a
// trailing fresh applied variable, and basic-typed capture-free subterms.
struct AccSet {
  // canonical_key -> (term, derivation rooted at clause Acc1 for the seed).
  std::map<std::string, std::pair<TermPtr, Derivation>> members;
};

AccSet accessible(const Signature& sig, const TermPtr& seed);
// Union over the lhs argument vector; derivations carry the seed index.
AccSet acc_vector(const Signature& sig, const std::vector<TermPtr>& args);

// The argument ordering. Constructor-path descent applies at strictly
// positive inductive types; the strict-subterm branch (capture-free, free
// variables contained) applies at every type. The two terms must have one
// type, or types of mutually inductive members of one dependency class
// (recursor cross-calls compare a tree against its list of children);
// anything else throws TypeError.
bool greater_arg(const Signature& sig, const TermPtr& u, const TermPtr& v);
// Every witness, constructor-path ones first; no closure side conditions.
std::vector<ArgCompare> greater_arg_witnesses(const Signature& sig,
                                              const TermPtr& u,
                                              const TermPtr& v);

// Status comparison of argument vectors under a base order: lexicographic
// over the groups, Dershowitz-Manna multiset extension inside a group
// (alpha-equal common part removed, every remaining right element dominated
// by a remaining left element). Generic so tests can cross-check against
// integer orders.
template <typename T, typename GreaterFn, typename EqualFn>
bool status_greater_generic(const Status& st, const std::vector<T>& u,
                            const std::vector<T>& v, GreaterFn greater,
                            EqualFn equal) {
  for (const auto& group : st.groups) {
    std::vector<T> left, right;
    for (int idx : group) {
      left.push_back(u.at(idx - 1));
      right.push_back(v.at(idx - 1));
    }
    // Remove a maximal common part.
    std::vector<bool> used(right.size(), false);
    std::vector<T> lrem;
    for (const auto& l : left) {
      bool matched = false;
      for (size_t j = 0; j < right.size(); ++j) {
        if (!used[j] && equal(l, right[j])) {
          used[j] = true;
          matched = true;
          break;
        }
      }
      if (!matched) lrem.push_back(l);
    }
    std::vector<T> rrem;
    for (size_t j = 0; j < right.size(); ++j) {
      if (!used[j]) rrem.push_back(right[j]);
    }
    if (lrem.empty() && rrem.empty()) continue;  // equal group, next one
    if (lrem.empty()) return false;
    bool all_dominated = true;
    for (const auto& r : rrem) {
      bool dom = false;
      for (const auto& l : lrem) {
        if (greater(l, r)) {
          dom = true;
          break;
        }
      }
      if (!dom) {
        all_dominated = false;
        break;
      }
    }
    return all_dominated;
  }
  return false;  // every group equal: not strictly greater
}

// Term instantiation with greater_arg as base order. Throws TypeError when
// a compared pair differs in type.
bool status_greater(const Signature& sig, const Status& st,
                    const std::vector<TermPtr>& u,
                    const std::vector<TermPtr>& v);

// Failure diagnostics: the deepest subterm for which every closure clause
// failed, with a clause-by-clause reason.
struct FailureDiag {
  TermPtr term;
  std::string reason;
};

// Backward search for membership of terms in the closure of f(l⃗): the set
// built from variables, accessible subterms, application, abstraction,
// calls to smaller symbols, and equivalent-symbol calls with status-smaller
// arguments. Memoizes per alpha-class; results are certificates.
class ClosureSearch {
 public:
  ClosureSearch(const Signature& sig, std::string f,
                std::vector<TermPtr> lhs_args);

  std::optional<Derivation> check(const TermPtr& r);
  const std::optional<FailureDiag>& failure() const { return failure_; }
  const AccSet& accessible_set() const { return acc_; }

 private:
  std::optional<Derivation> cc(const TermPtr& t, int depth);
  // greater_arg restricted to witnesses whose applied vector lies in the
  // closure; fills `out` on success.
  bool cc_greater(const TermPtr& u, const TermPtr& v, int depth,
                  ArgCompare& out);
  std::optional<StatusEvidence> status_compare(const std::vector<TermPtr>& u,
                                               const Status& st, int depth,
                                               std::string& why_not);
  void note_failure(const TermPtr& t, int depth, const std::string& reason);

  const Signature& sig_;
  std::string f_;
  std::vector<TermPtr> lhs_args_;
  Status stat_;
  AccSet acc_;
  std::map<std::string, std::optional<Derivation>> memo_;
  std::optional<FailureDiag> failure_;
  int failure_depth_ = -1;
};

struct RuleVerdict {
  int rule_index = -1;
  std::string head;
  bool accepted = false;
  std::optional<Derivation> rhs_derivation;
  // Accessibility certificate per free variable of the rhs.
  std::vector<std::pair<std::string, Derivation>> fv_access;
  // Closure certificates for both sides of each condition.
  std::vector<Derivation> condition_derivations;
  std::string failure;
  std::optional<FailureDiag> diag;
};

struct SchemaReport {
  bool positivity_ok = false;       // every inductive strictly positive
  bool declarations_ok = false;     // precedence acyclic, statuses agree
  std::vector<RuleVerdict> rules;
  bool all_rules_accepted = false;
  bool constructor_rules_present = false;
  // Strong-normalization verdict: both assumptions hold, every rule is
  // accepted, and no constructor has a defining rule.
  bool sn_guaranteed = false;
  // Overall acceptance: every rule accepted and no verdict failure that an
  // option does not cover. Weaker than sn_guaranteed: options can accept a
  // system while withdrawing the termination claim.
  bool accepted_overall = false;
  std::vector<std::string> warnings;
};

RuleVerdict check_rule_schema(const RuleSystem& rs, int rule_index);
SchemaReport check_system(const RuleSystem& rs);

// Independent certificate checker: re-validates every node of a derivation
// against the clause definitions, without consulting the search. `f` and
// `lhs_args` give the closure context.
bool replay_derivation(const Signature& sig, const std::string& f,
                       const std::vector<TermPtr>& lhs_args,
                       const Derivation& d, std::string* why = nullptr);

}  // namespace idts
