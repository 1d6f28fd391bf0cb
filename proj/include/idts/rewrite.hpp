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
#include <optional>
#include <string>
#include <vector>

#include "idts/signature.hpp"
#include "idts/term.hpp"

namespace idts {

// A rewrite rule lhs --> rhs, optionally guarded by joinability conditions
// u = v. Well-formedness: the lhs is headed by a function symbol, both sides
// have the same type, and every free variable of the rhs and of the
// conditions occurs free in the lhs.
struct Rule {
  TermPtr lhs;
  TermPtr rhs;
  std::vector<std::pair<TermPtr, TermPtr>> conditions;
  std::string name;  // optional label for reports

  const std::string& head() const { return lhs->name(); }
  bool conditional() const { return !conditions.empty(); }
};

// Throws RuleError (with the violated condition number) or TypeError.
void check_rule(const Signature& sig, const Rule& rule);

class RuleSystem {
 public:
  explicit RuleSystem(std::shared_ptr<const Signature> sig);

  // Validates the rule, including the constructor-headed-lhs policy.
  // Returns the rule index.
  int add_rule(Rule rule);
  // Test/transform backdoor: no validation at all.
  int add_rule_unchecked(Rule rule);

  const Signature& sig() const { return *sig_; }
  std::shared_ptr<const Signature> sig_ptr() const { return sig_; }
  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<int>& rules_for(const std::string& head) const;
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::shared_ptr<const Signature> sig_;
  std::vector<Rule> rules_;
  std::map<std::string, std::vector<int>> by_head_;
  std::vector<std::string> warnings_;
};

// Syntactic matching modulo alpha. Never instantiates bound variables of the
// pattern, never equates a pattern variable with a term that would let a
// subject-bound variable escape its binder, and requires repeated pattern
// variables to match alpha-equal subjects.
std::optional<Substitution> match(const TermPtr& pattern,
                                  const TermPtr& subject);

TermPtr beta_step(const TermPtr& t, const TermPos& p);  // NotARedex
TermPtr eta_step(const TermPtr& t, const TermPos& p);   // NotARedex
bool is_beta_redex(const TermPtr& t);
bool is_eta_redex(const TermPtr& t);

enum class StepKind { Rule, Beta, Eta };

struct RewriteCandidate {
  TermPos pos;
  StepKind kind;
  int rule_index = -1;  // StepKind::Rule only
  TermPtr result;
};

struct CandidateSet {
  std::vector<RewriteCandidate> candidates;
  // Positions where a conditional rule could not be decided within the
  // condition fuel; recorded, never thrown.
  std::vector<std::pair<TermPos, int>> condition_fuel_exhausted;
};

struct EvalLimits {
  long fuel = 10000;
  long condition_fuel = 1000;
  int max_condition_depth = 8;
};

// All one-step reducts in leftmost-outermost position order; rule candidates
// in declaration order before beta before eta at each position.
CandidateSet rewrite_candidates(const RuleSystem& rs, const TermPtr& t,
                                const EvalLimits& limits = {});

enum class Strategy { Outermost, Innermost };

struct TraceStep {
  TermPos pos;
  StepKind kind;
  int rule_index = -1;
  TermPtr after;
};

struct ReductionTrace {
  TermPtr initial;
  std::vector<TraceStep> steps;
};

std::string to_string(const ReductionTrace& trace);

struct NormalizeResult {
  TermPtr term;
  bool completed = false;  // false: fuel ran out, term is the last form
  long steps_used = 0;
  ReductionTrace trace;
};

NormalizeResult normalize(const RuleSystem& rs, const TermPtr& t,
                          const EvalLimits& limits = {},
                          Strategy strategy = Strategy::Outermost,
                          bool keep_trace = false);

struct SubjectReductionViolation {
  TermPtr from;
  RewriteCandidate step;
};

// Explores every reduct chain up to the given depth; reports the first step
// that changes the type.
std::optional<SubjectReductionViolation> subject_reduction_probe(
    const RuleSystem& rs, const TermPtr& t, int depth,
    const EvalLimits& limits = {});

}  // namespace idts
