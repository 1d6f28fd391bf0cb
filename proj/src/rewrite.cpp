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

#include "idts/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "idts/errors.hpp"

namespace idts {

void check_rule(const Signature& sig, const Rule& rule) {
  if (!rule.lhs || !rule.rhs) throw RuleError(1, "rule sides must be present");
  if (rule.lhs->kind() != Term::Kind::Fun) {
    throw RuleError(1, "left-hand side must be headed by a function symbol");
  }
  if (!sig.has_symbol(rule.lhs->name())) {
    throw RuleError(1, "unknown head symbol " + rule.lhs->name());
  }
  auto lhs_fv = free_vars(rule.lhs);
  for (const auto& v : free_vars(rule.rhs)) {
    if (!lhs_fv.count(v)) {
      throw RuleError(2, "right-hand side variable " + v +
                             " does not occur in the left-hand side");
    }
  }
  for (const auto& [u, w] : rule.conditions) {
    if (!u || !w) throw RuleError(2, "conditions must be present");
    for (const auto& v : free_vars(u)) {
      if (!lhs_fv.count(v)) {
        throw RuleError(2, "condition variable " + v +
                               " does not occur in the left-hand side");
      }
    }
    for (const auto& v : free_vars(w)) {
      if (!lhs_fv.count(v)) {
        throw RuleError(2, "condition variable " + v +
                               " does not occur in the left-hand side");
      }
    }
    if (!(u->type() == w->type())) {
      throw RuleError(3, "condition sides have different types");
    }
  }
  if (!(rule.lhs->type() == rule.rhs->type())) {
    throw RuleError(3, "rule sides have different types");
  }
}

RuleSystem::RuleSystem(std::shared_ptr<const Signature> sig)
    : sig_(std::move(sig)) {
  if (!sig_ || !sig_->sealed()) {
    throw ValidationError("rule system needs a sealed signature");
  }
}

int RuleSystem::add_rule(Rule rule) {
  check_rule(*sig_, rule);
  if (sig_->is_constructor(rule.head())) {
    if (!sig_->allow_constructor_rules()) {
      throw RuleError(1, "left-hand side is headed by constructor " +
                             rule.head() +
                             " (enable allow_constructor_rules to accept "
                             "first-order constructor systems)");
    }
    warnings_.push_back("rule for constructor " + rule.head() +
                        ": termination analysis treats this head as opaque");
  }
  return add_rule_unchecked(std::move(rule));
}

int RuleSystem::add_rule_unchecked(Rule rule) {
  int idx = static_cast<int>(rules_.size());
  by_head_[rule.lhs->name()].push_back(idx);
  rules_.push_back(std::move(rule));
  return idx;
}

const std::vector<int>& RuleSystem::rules_for(const std::string& head) const {
  static const std::vector<int> kNone;
  auto it = by_head_.find(head);
  return it == by_head_.end() ? kNone : it->second;
}

namespace {

// Two-way binder correspondence, as in alpha comparison, plus the set of
// subject binders in scope. A rule variable may not capture a subject-bound
// variable: its image would escape that binder.
struct MatchScope {
  std::map<std::string, std::string> pat_to_sub;
  std::map<std::string, std::string> sub_to_pat;
  std::map<std::string, int> subject_scope;
};

bool match_rec(const TermPtr& p, const TermPtr& s, MatchScope& sc,
               std::map<std::string, TermPtr>& out) {
  if (!(p->type() == s->type())) return false;
  switch (p->kind()) {
    case Term::Kind::Var: {
      auto it = sc.pat_to_sub.find(p->name());
      if (it != sc.pat_to_sub.end()) {
        // Bound in the pattern: only the corresponding subject binder fits.
        if (s->kind() != Term::Kind::Var) return false;
        auto jt = sc.sub_to_pat.find(s->name());
        return jt != sc.sub_to_pat.end() && it->second == s->name() &&
               jt->second == p->name();
      }
      for (const auto& v : free_vars(s)) {
        auto kt = sc.subject_scope.find(v);
        if (kt != sc.subject_scope.end() && kt->second > 0) return false;
      }
      auto prev = out.find(p->name());
      if (prev != out.end()) return alpha_equal(prev->second, s);
      out.emplace(p->name(), s);
      return true;
    }
    case Term::Kind::Abs: {
      if (s->kind() != Term::Kind::Abs) return false;
      if (!(p->binder_type() == s->binder_type())) return false;
      auto save_p = sc.pat_to_sub.find(p->name()) != sc.pat_to_sub.end()
                        ? std::optional<std::string>(sc.pat_to_sub[p->name()])
                        : std::nullopt;
      auto save_s = sc.sub_to_pat.find(s->name()) != sc.sub_to_pat.end()
                        ? std::optional<std::string>(sc.sub_to_pat[s->name()])
                        : std::nullopt;
      sc.pat_to_sub[p->name()] = s->name();
      sc.sub_to_pat[s->name()] = p->name();
      sc.subject_scope[s->name()]++;
      const bool ok = match_rec(p->body(), s->body(), sc, out);
      sc.subject_scope[s->name()]--;
      if (save_p) sc.pat_to_sub[p->name()] = *save_p;
      else sc.pat_to_sub.erase(p->name());
      if (save_s) sc.sub_to_pat[s->name()] = *save_s;
      else sc.sub_to_pat.erase(s->name());
      return ok;
    }
    case Term::Kind::App:
      return s->kind() == Term::Kind::App &&
             match_rec(p->fn(), s->fn(), sc, out) &&
             match_rec(p->arg(), s->arg(), sc, out);
    case Term::Kind::Fun: {
      if (s->kind() != Term::Kind::Fun || s->name() != p->name()) return false;
      const auto& pa = p->args();
      const auto& sa = s->args();
      if (pa.size() != sa.size()) return false;
      for (size_t i = 0; i < pa.size(); ++i) {
        if (!match_rec(pa[i], sa[i], sc, out)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<Substitution> match(const TermPtr& pattern,
                                  const TermPtr& subject) {
  MatchScope sc;
  std::map<std::string, TermPtr> bindings;
  if (!match_rec(pattern, subject, sc, bindings)) return std::nullopt;
  Substitution theta;
  for (auto& [v, img] : bindings) theta.bind(v, img);
  return theta;
}

bool is_beta_redex(const TermPtr& t) {
  return t->kind() == Term::Kind::App && t->fn()->kind() == Term::Kind::Abs;
}

bool is_eta_redex(const TermPtr& t) {
  if (t->kind() != Term::Kind::Abs) return false;
  const TermPtr& b = t->body();
  if (b->kind() != Term::Kind::App) return false;
  const TermPtr& a = b->arg();
  if (a->kind() != Term::Kind::Var || a->name() != t->name()) return false;
  return !has_free_var(b->fn(), t->name());
}

namespace {

TermPtr contract_beta(const TermPtr& redex) {
  const TermPtr& lam = redex->fn();
  Substitution theta;
  theta.bind(lam->name(), redex->arg());
  return substitute(lam->body(), theta);
}

TermPtr contract_eta(const TermPtr& redex) { return redex->body()->fn(); }

}  // namespace

TermPtr beta_step(const TermPtr& t, const TermPos& p) {
  TermPtr sub = subterm_at(t, p);
  if (!is_beta_redex(sub)) {
    throw NotARedex("no beta redex at " + position_to_string(p));
  }
  return replace_at(t, p, contract_beta(sub));
}

TermPtr eta_step(const TermPtr& t, const TermPos& p) {
  TermPtr sub = subterm_at(t, p);
  if (!is_eta_redex(sub)) {
    throw NotARedex("no eta redex at " + position_to_string(p));
  }
  return replace_at(t, p, contract_eta(sub));
}

namespace {

struct Sink {
  std::vector<RewriteCandidate>* out;
  std::vector<std::pair<TermPos, int>>* exhausted;
  bool first_only = false;
  bool found = false;
};

NormalizeResult normalize_impl(const RuleSystem& rs, const TermPtr& t,
                               const EvalLimits& limits, Strategy strategy,
                               bool keep_trace, int depth);

// Decides the instantiated conditions of a rule by joinability: each side is
// normalized under the condition fuel and the results compared modulo alpha.
// Conditions always use the outermost strategy so that verdicts do not
// depend on the ambient strategy. Sets fuel_out instead of deciding when
// fuel or nesting depth runs out.
bool conditions_hold(const RuleSystem& rs, const Rule& rule,
                     const Substitution& theta, const EvalLimits& limits,
                     int depth, bool& fuel_out) {
  if (depth >= limits.max_condition_depth) {
    fuel_out = true;
    return false;
  }
  EvalLimits inner = limits;
  inner.fuel = limits.condition_fuel;
  for (const auto& [u, w] : rule.conditions) {
    TermPtr lhs = substitute(u, theta);
    TermPtr rhs = substitute(w, theta);
    NormalizeResult ln = normalize_impl(rs, lhs, inner, Strategy::Outermost,
                                        false, depth + 1);
    NormalizeResult rn = normalize_impl(rs, rhs, inner, Strategy::Outermost,
                                        false, depth + 1);
    if (!ln.completed || !rn.completed) {
      fuel_out = true;
      return false;
    }
    if (!alpha_equal(ln.term, rn.term)) return false;
  }
  return true;
}

// Candidates at one position: matching rules in declaration order, then
// beta, then eta.
void try_position(const RuleSystem& rs, const TermPtr& whole,
                  const TermPos& pos, const EvalLimits& limits, int depth,
                  Sink& sink) {
  TermPtr sub = subterm_at(whole, pos);
  if (sub->kind() == Term::Kind::Fun) {
    for (int idx : rs.rules_for(sub->name())) {
      const Rule& rule = rs.rules()[idx];
      auto theta = match(rule.lhs, sub);
      if (!theta) continue;
      if (rule.conditional()) {
        bool fuel_out = false;
        if (!conditions_hold(rs, rule, *theta, limits, depth, fuel_out)) {
          if (fuel_out && sink.exhausted) {
            sink.exhausted->emplace_back(pos, idx);
          }
          continue;
        }
      }
      TermPtr reduct = substitute(rule.rhs, *theta);
      sink.out->push_back(
          {pos, StepKind::Rule, idx, replace_at(whole, pos, reduct)});
      if (sink.first_only) {
        sink.found = true;
        return;
      }
    }
  }
  if (is_beta_redex(sub)) {
    sink.out->push_back(
        {pos, StepKind::Beta, -1, replace_at(whole, pos, contract_beta(sub))});
    if (sink.first_only) {
      sink.found = true;
      return;
    }
  }
  if (is_eta_redex(sub)) {
    sink.out->push_back(
        {pos, StepKind::Eta, -1, replace_at(whole, pos, contract_eta(sub))});
    if (sink.first_only) {
      sink.found = true;
      return;
    }
  }
}

void walk_pre(const RuleSystem& rs, const TermPtr& whole, const TermPtr& node,
              TermPos& here, const EvalLimits& limits, int depth, Sink& sink) {
  try_position(rs, whole, here, limits, depth, sink);
  if (sink.found) return;
  size_t n = node->kind() == Term::Kind::Abs   ? 1
             : node->kind() == Term::Kind::App ? 2
             : node->kind() == Term::Kind::Fun ? node->args().size()
                                               : 0;
  for (size_t i = 1; i <= n; ++i) {
    const TermPtr& kid = node->kind() == Term::Kind::Abs ? node->body()
                         : node->kind() == Term::Kind::App
                             ? (i == 1 ? node->fn() : node->arg())
                             : node->args()[i - 1];
    here.push_back(static_cast<int>(i));
    walk_pre(rs, whole, kid, here, limits, depth, sink);
    here.pop_back();
    if (sink.found) return;
  }
}

void walk_post(const RuleSystem& rs, const TermPtr& whole, const TermPtr& node,
               TermPos& here, const EvalLimits& limits, int depth,
               Sink& sink) {
  size_t n = node->kind() == Term::Kind::Abs   ? 1
             : node->kind() == Term::Kind::App ? 2
             : node->kind() == Term::Kind::Fun ? node->args().size()
                                               : 0;
  for (size_t i = 1; i <= n; ++i) {
    const TermPtr& kid = node->kind() == Term::Kind::Abs ? node->body()
                         : node->kind() == Term::Kind::App
                             ? (i == 1 ? node->fn() : node->arg())
                             : node->args()[i - 1];
    here.push_back(static_cast<int>(i));
    walk_post(rs, whole, kid, here, limits, depth, sink);
    here.pop_back();
    if (sink.found) return;
  }
  try_position(rs, whole, here, limits, depth, sink);
}

std::optional<RewriteCandidate> first_candidate(
    const RuleSystem& rs, const TermPtr& t, const EvalLimits& limits,
    Strategy strategy, int depth,
    std::vector<std::pair<TermPos, int>>* exhausted) {
  std::vector<RewriteCandidate> out;
  Sink sink{&out, exhausted, true, false};
  TermPos here;
  if (strategy == Strategy::Outermost) {
    walk_pre(rs, t, t, here, limits, depth, sink);
  } else {
    walk_post(rs, t, t, here, limits, depth, sink);
  }
  if (out.empty()) return std::nullopt;
  return out.front();
}

NormalizeResult normalize_impl(const RuleSystem& rs, const TermPtr& t,
                               const EvalLimits& limits, Strategy strategy,
                               bool keep_trace, int depth) {
  NormalizeResult res;
  res.term = t;
  if (keep_trace) res.trace.initial = t;
  while (res.steps_used < limits.fuel) {
    auto cand = first_candidate(rs, res.term, limits, strategy, depth, nullptr);
    if (!cand) {
      res.completed = true;
      return res;
    }
    res.term = cand->result;
    ++res.steps_used;
    if (keep_trace) {
      res.trace.steps.push_back(
          {cand->pos, cand->kind, cand->rule_index, cand->result});
    }
  }
  // One last look: the fuel may have run out exactly at the normal form.
  res.completed =
      !first_candidate(rs, res.term, limits, strategy, depth, nullptr)
           .has_value();
  return res;
}

}  // namespace

CandidateSet rewrite_candidates(const RuleSystem& rs, const TermPtr& t,
                                const EvalLimits& limits) {
  CandidateSet set;
  Sink sink{&set.candidates, &set.condition_fuel_exhausted, false, false};
  TermPos here;
  walk_pre(rs, t, t, here, limits, 0, sink);
  return set;
}

NormalizeResult normalize(const RuleSystem& rs, const TermPtr& t,
                          const EvalLimits& limits, Strategy strategy,
                          bool keep_trace) {
  return normalize_impl(rs, t, limits, strategy, keep_trace, 0);
}

std::string to_string(const ReductionTrace& trace) {
  std::ostringstream os;
  os << "start: " << to_string(trace.initial) << "\n";
  int n = 0;
  for (const auto& st : trace.steps) {
    os << "step " << ++n << ": ";
    switch (st.kind) {
      case StepKind::Beta:
        os << "beta";
        break;
      case StepKind::Eta:
        os << "eta";
        break;
      case StepKind::Rule:
        os << "rule " << st.rule_index;
        break;
    }
    os << " @ " << position_to_string(st.pos) << " => " << to_string(st.after)
       << "\n";
  }
  return os.str();
}

std::optional<SubjectReductionViolation> subject_reduction_probe(
    const RuleSystem& rs, const TermPtr& t, int depth,
    const EvalLimits& limits) {
  std::deque<std::pair<TermPtr, int>> queue;
  std::set<std::string> seen;
  queue.emplace_back(t, 0);
  seen.insert(canonical_key(t));
  while (!queue.empty()) {
    auto [cur, d] = queue.front();
    queue.pop_front();
    CandidateSet cands;
    try {
      cands = rewrite_candidates(rs, cur, limits);
    } catch (const TypeError&) {
      return SubjectReductionViolation{cur, {{}, StepKind::Rule, -1, nullptr}};
    }
    for (const auto& c : cands.candidates) {
      if (!(c.result->type() == cur->type())) {
        return SubjectReductionViolation{cur, c};
      }
      if (d + 1 < depth) {
        std::string key = canonical_key(c.result);
        if (seen.insert(key).second) queue.emplace_back(c.result, d + 1);
      }
    }
  }
  return std::nullopt;
}

}  // namespace idts
