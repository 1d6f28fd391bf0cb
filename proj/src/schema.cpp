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

#include "idts/schema.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "idts/errors.hpp"

namespace idts {

namespace {

// Enumerates the subterms of t (root excluded) whose free variables do not
// refer to any binder crossed on the way down: exactly the subterms v with
// FV(v) ⊆ FV(t) when read modulo alpha.
void capture_free_subterms(
    const TermPtr& t, TermPos& here, std::map<std::string, int>& binders,
    const std::function<void(const TermPos&, const TermPtr&)>& cb) {
  if (!here.empty()) {
    bool clean = true;
    for (const auto& v : free_vars(t)) {
      auto it = binders.find(v);
      if (it != binders.end() && it->second > 0) {
        clean = false;
        break;
      }
    }
    if (clean) cb(here, t);
  }
  switch (t->kind()) {
    case Term::Kind::Var:
      return;
    case Term::Kind::Abs: {
      binders[t->name()]++;
      here.push_back(1);
      capture_free_subterms(t->body(), here, binders, cb);
      here.pop_back();
      binders[t->name()]--;
      return;
    }
    case Term::Kind::App: {
      here.push_back(1);
      capture_free_subterms(t->fn(), here, binders, cb);
      here.back() = 2;
      capture_free_subterms(t->arg(), here, binders, cb);
      here.pop_back();
      return;
    }
    case Term::Kind::Fun: {
      for (size_t i = 0; i < t->args().size(); ++i) {
        here.push_back(static_cast<int>(i + 1));
        capture_free_subterms(t->args()[i], here, binders, cb);
        here.pop_back();
      }
      return;
    }
  }
}

void stamp_seed(Derivation& d, int seed_index) {
  d.seed_index = seed_index;
  for (auto& s : d.subs) stamp_seed(s, seed_index);
}

// The argument ordering compares terms of one type, extended to terms of
// mutually inductive types (same class of the dependency order) so that
// recursor-style cross-calls, e.g. a tree against the list it was built
// from, can be compared.
bool comparable_types(const Signature& sig, const Type& a, const Type& b) {
  if (a == b) return true;
  return a.is_ind() && b.is_ind() &&
         sig.dependency().equiv(a.ind_name(), b.ind_name());
}

}  // namespace

AccSet accessible(const Signature& sig, const TermPtr& seed) {
  AccSet out;
  const std::set<std::string> seed_fv = free_vars(seed);
  std::deque<TermPtr> work;

  auto add = [&](const TermPtr& t, Derivation d) {
    std::string key = canonical_key(t);
    if (out.members.count(key)) return;
    out.members.emplace(std::move(key), std::make_pair(t, std::move(d)));
    work.push_back(t);
  };

  Derivation root{"Acc1", seed, "", -1, {}, std::nullopt};
  add(seed, root);

  // Basic-typed capture-free subterms of the seed.
  TermPos here;
  std::map<std::string, int> binders;
  capture_free_subterms(seed, here, binders,
                        [&](const TermPos&, const TermPtr& sub) {
                          if (!sig.is_basic_type(sub->type())) return;
                          add(sub, Derivation{"Acc5", sub, "", -1, {root},
                                              std::nullopt});
                        });

  while (!work.empty()) {
    TermPtr u = work.front();
    work.pop_front();
    // The map never invalidates references on insert.
    const Derivation& du = out.members.at(canonical_key(u)).second;
    switch (u->kind()) {
      case Term::Kind::Abs:
        add(u->body(),
            Derivation{"Acc2", u->body(), "", -1, {du}, std::nullopt});
        break;
      case Term::Kind::Fun:
        if (sig.is_constructor(u->name())) {
          for (const auto& a : u->args()) {
            add(a, Derivation{"Acc3", a, u->name(), -1, {du}, std::nullopt});
          }
        }
        break;
      case Term::Kind::App: {
        const TermPtr& x = u->arg();
        if (x->kind() == Term::Kind::Var && !has_free_var(u->fn(), x->name()) &&
            !seed_fv.count(x->name())) {
          add(u->fn(),
              Derivation{"Acc4", u->fn(), "", -1, {du}, std::nullopt});
        }
        break;
      }
      case Term::Kind::Var:
        break;
    }
  }
  return out;
}

AccSet acc_vector(const Signature& sig, const std::vector<TermPtr>& args) {
  AccSet out;
  for (size_t i = 0; i < args.size(); ++i) {
    AccSet one = accessible(sig, args[i]);
    for (auto& [key, entry] : one.members) {
      stamp_seed(entry.second, static_cast<int>(i));
      out.members.emplace(key, std::move(entry));
    }
  }
  return out;
}

namespace {

// Positions reachable from the root through constructor applications only
// (every proper prefix constructor-headed), root excluded.
void constructor_path_candidates(const Signature& sig, const TermPtr& u,
                                 TermPos& here,
                                 std::vector<std::pair<TermPos, TermPtr>>& out) {
  if (u->kind() != Term::Kind::Fun || !sig.is_constructor(u->name())) return;
  for (size_t i = 0; i < u->args().size(); ++i) {
    here.push_back(static_cast<int>(i + 1));
    out.emplace_back(here, u->args()[i]);
    constructor_path_candidates(sig, u->args()[i], here, out);
    here.pop_back();
  }
}

}  // namespace

std::vector<ArgCompare> greater_arg_witnesses(const Signature& sig,
                                              const TermPtr& u,
                                              const TermPtr& v) {
  if (!comparable_types(sig, u->type(), v->type())) {
    throw TypeError("argument ordering compares terms of one type: " +
                    to_string(u->type()) + " vs " + to_string(v->type()));
  }
  std::vector<ArgCompare> out;
  if (sig.is_sp_inductive(u->type())) {
    std::vector<std::pair<TermPos, TermPtr>> cands;
    TermPos here;
    constructor_path_candidates(sig, u, here, cands);
    for (const auto& [pos, c] : cands) {
      // Split v as (head w1 ... wk) for k = 0, 1, ...; head must match c.
      std::vector<TermPtr> tail;
      TermPtr node = v;
      while (true) {
        if (alpha_equal(node, c)) {
          out.push_back({u, v, true, pos, tail, {}});
        }
        if (node->kind() != Term::Kind::App) break;
        tail.insert(tail.begin(), node->arg());
        node = node->fn();
      }
    }
  }
  // Strict-subterm branch, available at every type.
  TermPos here;
  std::map<std::string, int> binders;
  capture_free_subterms(u, here, binders,
                        [&](const TermPos& pos, const TermPtr& sub) {
                          if (alpha_equal(sub, v)) {
                            out.push_back({u, v, false, pos, {}, {}});
                          }
                        });
  return out;
}

bool greater_arg(const Signature& sig, const TermPtr& u, const TermPtr& v) {
  return !greater_arg_witnesses(sig, u, v).empty();
}

bool status_greater(const Signature& sig, const Status& st,
                    const std::vector<TermPtr>& u,
                    const std::vector<TermPtr>& v) {
  for (const auto& group : st.groups) {
    for (int idx : group) {
      if (idx < 1 || idx > static_cast<int>(u.size()) ||
          idx > static_cast<int>(v.size())) {
        throw TypeError("status index " + std::to_string(idx) +
                        " out of range for the compared vectors");
      }
      if (!comparable_types(sig, u[idx - 1]->type(), v[idx - 1]->type())) {
        throw TypeError("status comparison at position " +
                        std::to_string(idx) + " mixes types " +
                        to_string(u[idx - 1]->type()) + " and " +
                        to_string(v[idx - 1]->type()));
      }
    }
  }
  return status_greater_generic(
      st, u, v,
      [&](const TermPtr& a, const TermPtr& b) { return greater_arg(sig, a, b); },
      [](const TermPtr& a, const TermPtr& b) { return alpha_equal(a, b); });
}

ClosureSearch::ClosureSearch(const Signature& sig, std::string f,
                             std::vector<TermPtr> lhs_args)
    : sig_(sig),
      f_(std::move(f)),
      lhs_args_(std::move(lhs_args)),
      stat_(sig.decl(f_).status),
      acc_(acc_vector(sig, lhs_args_)) {}

std::optional<Derivation> ClosureSearch::check(const TermPtr& r) {
  return cc(r, 0);
}

void ClosureSearch::note_failure(const TermPtr& t, int depth,
                                 const std::string& reason) {
  if (depth > failure_depth_) {
    failure_depth_ = depth;
    failure_ = FailureDiag{t, reason};
  }
}

bool ClosureSearch::cc_greater(const TermPtr& u, const TermPtr& v, int depth,
                               ArgCompare& out) {
  if (!comparable_types(sig_, u->type(), v->type())) return false;
  for (ArgCompare w : greater_arg_witnesses(sig_, u, v)) {
    if (w.constructor_path && !w.applied.empty()) {
      // Side condition: the applied vector must lie in the closure.
      std::vector<Derivation> ds;
      bool ok = true;
      for (const auto& a : w.applied) {
        auto d = cc(a, depth + 1);
        if (!d) {
          ok = false;
          break;
        }
        ds.push_back(*d);
      }
      if (!ok) continue;
      w.applied_closure = std::move(ds);
    }
    out = std::move(w);
    return true;
  }
  return false;
}

std::optional<StatusEvidence> ClosureSearch::status_compare(
    const std::vector<TermPtr>& u, const Status& st, int depth,
    std::string& why_not) {
  StatusEvidence ev{st, lhs_args_, u, {}, -1};
  for (const auto& group : st.groups) {
    for (int idx : group) {
      if (idx < 1 || idx > static_cast<int>(lhs_args_.size()) ||
          idx > static_cast<int>(u.size())) {
        why_not = "status index " + std::to_string(idx) +
                  " out of range for the call arguments";
        return std::nullopt;
      }
      if (!comparable_types(sig_, lhs_args_[idx - 1]->type(),
                            u[idx - 1]->type())) {
        why_not = "incomparable types at status position " +
                  std::to_string(idx);
        return std::nullopt;
      }
    }
    std::vector<TermPtr> left, right;
    for (int idx : group) {
      left.push_back(lhs_args_[idx - 1]);
      right.push_back(u[idx - 1]);
    }
    std::vector<bool> used(right.size(), false);
    std::vector<TermPtr> lrem, rrem;
    for (const auto& l : left) {
      bool matched = false;
      for (size_t j = 0; j < right.size(); ++j) {
        if (!used[j] && alpha_equal(l, right[j])) {
          used[j] = true;
          matched = true;
          break;
        }
      }
      if (!matched) lrem.push_back(l);
    }
    for (size_t j = 0; j < right.size(); ++j) {
      if (!used[j]) rrem.push_back(right[j]);
    }
    if (lrem.empty() && rrem.empty()) {
      ev.groups.push_back(GroupEvidence{group, true, {}});
      continue;
    }
    if (lrem.empty()) {
      why_not = "right side of a status group strictly extends the left";
      return std::nullopt;
    }
    GroupEvidence ge{group, false, {}};
    for (const auto& r : rrem) {
      bool dominated = false;
      for (const auto& l : lrem) {
        ArgCompare w;
        if (cc_greater(l, r, depth, w)) {
          ge.dominations.push_back(std::move(w));
          dominated = true;
          break;
        }
      }
      if (!dominated) {
        why_not = "call argument " + to_string(r) +
                  " is not below any of the left-hand side arguments in its "
                  "status group";
        return std::nullopt;
      }
    }
    ev.groups.push_back(std::move(ge));
    ev.deciding_group = static_cast<int>(ev.groups.size()) - 1;
    return ev;
  }
  why_not = "call arguments equal the left-hand side arguments under the "
            "status (no strict decrease)";
  return std::nullopt;
}

std::optional<Derivation> ClosureSearch::cc(const TermPtr& t, int depth) {
  std::string key = canonical_key(t);
  auto hit = memo_.find(key);
  if (hit != memo_.end()) return hit->second;

  std::optional<Derivation> result;
  std::vector<std::string> reasons;

  if (t->kind() == Term::Kind::Var) {
    result = Derivation{"CC1", t, "", -1, {}, std::nullopt};
  }
  if (!result) {
    auto acc_hit = acc_.members.find(key);
    if (acc_hit != acc_.members.end()) {
      result = Derivation{"CC2",
                          t,
                          "",
                          acc_hit->second.second.seed_index,
                          {acc_hit->second.second},
                          std::nullopt};
    } else {
      reasons.push_back("not accessible in the left-hand side arguments");
    }
  }
  if (!result && t->kind() == Term::Kind::App) {
    auto df = cc(t->fn(), depth + 1);
    if (df) {
      auto da = cc(t->arg(), depth + 1);
      if (da) {
        result = Derivation{"CC3", t, "", -1, {*df, *da}, std::nullopt};
      } else {
        reasons.push_back("application argument is not in the closure");
      }
    } else {
      reasons.push_back("applied function is not in the closure");
    }
  }
  if (!result && t->kind() == Term::Kind::Abs) {
    auto db = cc(t->body(), depth + 1);
    if (db) {
      result = Derivation{"CC4", t, "", -1, {*db}, std::nullopt};
    } else {
      reasons.push_back("abstraction body is not in the closure");
    }
  }
  if (!result && t->kind() == Term::Kind::Fun) {
    const std::string& g = t->name();
    std::vector<Derivation> arg_derivs;
    bool args_ok = true;
    for (const auto& a : t->args()) {
      auto d = cc(a, depth + 1);
      if (!d) {
        args_ok = false;
        reasons.push_back("argument " + to_string(a) +
                          " is not in the closure");
        break;
      }
      arg_derivs.push_back(*d);
    }
    if (args_ok && sig_.prec_greater(f_, g)) {
      result = Derivation{"CC5", t, g, -1, std::move(arg_derivs),
                          std::nullopt};
    } else if (args_ok && (g == f_ || sig_.prec_equiv(f_, g))) {
      std::string why;
      auto ev = status_compare(t->args(), stat_, depth, why);
      if (ev) {
        result =
            Derivation{"CC6", t, g, -1, std::move(arg_derivs), std::move(*ev)};
      } else {
        reasons.push_back("recursive call not smaller: " + why);
      }
    } else if (args_ok) {
      reasons.push_back("head symbol " + g +
                        " is neither below nor equivalent to " + f_ +
                        " in the precedence");
    }
  }

  if (!result) {
    std::string joined;
    for (size_t i = 0; i < reasons.size(); ++i) {
      if (i) joined += "; ";
      joined += reasons[i];
    }
    if (joined.empty()) joined = "no closure clause applies";
    note_failure(t, depth, joined);
  }
  memo_.emplace(std::move(key), result);
  return result;
}

RuleVerdict check_rule_schema(const RuleSystem& rs, int rule_index) {
  const Rule& rule = rs.rules().at(rule_index);
  RuleVerdict verdict;
  verdict.rule_index = rule_index;
  if (rule.lhs->kind() != Term::Kind::Fun) {
    verdict.failure = "left-hand side is not a function-symbol application";
    return verdict;
  }
  verdict.head = rule.head();

  const std::vector<TermPtr>& lhs_args = rule.lhs->args();
  ClosureSearch search(rs.sig(), rule.head(), lhs_args);

  auto rhs_deriv = search.check(rule.rhs);
  if (!rhs_deriv) {
    verdict.failure = "right-hand side is not in the computable closure";
    verdict.diag = search.failure();
    return verdict;
  }
  verdict.rhs_derivation = std::move(rhs_deriv);

  for (const auto& [name, type] : free_vars_typed(rule.rhs)) {
    TermPtr var = Term::var(name, type);
    auto it = search.accessible_set().members.find(canonical_key(var));
    if (it == search.accessible_set().members.end()) {
      verdict.failure = "free variable " + name +
                        " of the right-hand side is not accessible in the "
                        "left-hand side arguments";
      verdict.rhs_derivation.reset();
      return verdict;
    }
    verdict.fv_access.emplace_back(name, it->second.second);
  }

  for (const auto& [cu, cv] : rule.conditions) {
    for (const TermPtr& side : {cu, cv}) {
      auto d = search.check(side);
      if (!d) {
        verdict.failure = "condition term " + to_string(side) +
                          " is not in the computable closure";
        verdict.diag = search.failure();
        verdict.rhs_derivation.reset();
        verdict.fv_access.clear();
        verdict.condition_derivations.clear();
        return verdict;
      }
      verdict.condition_derivations.push_back(std::move(*d));
    }
  }

  verdict.accepted = true;
  return verdict;
}

SchemaReport check_system(const RuleSystem& rs) {
  SchemaReport rep;
  const Signature& sig = rs.sig();

  rep.positivity_ok = true;
  for (const auto& ind : sig.inductives()) {
    if (!sig.positivity(ind).strictly_positive) {
      rep.positivity_ok = false;
      rep.warnings.push_back("inductive type " + ind +
                             " is not strictly positive");
    }
  }
  // Sealing rejects structural problems, but verdict-grade findings
  // (precedence cycles, status disagreements) pass through it. Positivity
  // findings are counted separately above, so subtract their share.
  int positivity_failures = 0;
  if (!sig.allow_non_strictly_positive()) {
    for (const auto& ind : sig.inductives()) {
      if (!sig.positivity(ind).strictly_positive) ++positivity_failures;
    }
  }
  rep.declarations_ok =
      static_cast<int>(sig.validation().verdict_failures.size()) ==
      positivity_failures;
  for (const auto& v : sig.validation().verdict_failures) {
    rep.warnings.push_back(v);
  }

  rep.all_rules_accepted = true;
  for (size_t i = 0; i < rs.rules().size(); ++i) {
    rep.rules.push_back(check_rule_schema(rs, static_cast<int>(i)));
    if (!rep.rules.back().accepted) rep.all_rules_accepted = false;
    if (sig.is_constructor(rs.rules()[i].head())) {
      rep.constructor_rules_present = true;
    }
  }
  for (const auto& w : rs.warnings()) rep.warnings.push_back(w);
  if (rep.constructor_rules_present) {
    rep.warnings.push_back(
        "constructor-headed rules present: the termination guarantee does "
        "not cover this system");
  }

  rep.sn_guaranteed = rep.positivity_ok && rep.declarations_ok &&
                      rep.all_rules_accepted &&
                      !rep.constructor_rules_present;
  rep.accepted_overall =
      rep.all_rules_accepted && rep.declarations_ok &&
      (rep.positivity_ok || sig.allow_non_strictly_positive());
  return rep;
}

// ---------------------------------------------------------------------------
// Independent certificate replay.

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

bool is_capture_free_subterm_at(const TermPtr& t, const TermPos& pos,
                                const TermPtr& expected) {
  if (pos.empty()) return false;
  TermPtr node = t;
  std::set<std::string> binders;
  for (int step : pos) {
    switch (node->kind()) {
      case Term::Kind::Var:
        return false;
      case Term::Kind::Abs:
        if (step != 1) return false;
        binders.insert(node->name());
        node = node->body();
        break;
      case Term::Kind::App:
        if (step == 1) node = node->fn();
        else if (step == 2) node = node->arg();
        else return false;
        break;
      case Term::Kind::Fun:
        if (step < 1 || step > static_cast<int>(node->args().size()))
          return false;
        node = node->args()[step - 1];
        break;
    }
  }
  if (!alpha_equal(node, expected)) return false;
  for (const auto& v : free_vars(node)) {
    if (binders.count(v)) return false;
  }
  return true;
}

bool replay_acc(const Signature& sig, const std::vector<TermPtr>& seeds,
                const Derivation& d, std::string* why) {
  if (d.seed_index < 0 || d.seed_index >= static_cast<int>(seeds.size())) {
    return fail(why, "accessibility node without a valid seed index");
  }
  const TermPtr& seed = seeds[d.seed_index];
  if (d.clause == "Acc1") {
    if (!alpha_equal(d.term, seed)) return fail(why, "Acc1 term is not the seed");
    return true;
  }
  if (d.clause == "Acc5") {
    if (!sig.is_basic_type(d.term->type())) {
      return fail(why, "Acc5 term is not of basic type");
    }
    // Search for a capture-free occurrence in the seed.
    bool found = false;
    TermPos here;
    std::map<std::string, int> binders;
    capture_free_subterms(seed, here, binders,
                          [&](const TermPos&, const TermPtr& sub) {
                            if (!found && alpha_equal(sub, d.term))
                              found = true;
                          });
    if (!found && alpha_equal(seed, d.term)) found = true;
    if (!found) return fail(why, "Acc5 term is not a capture-free subterm of the seed");
    return true;
  }
  if (d.subs.size() != 1) {
    return fail(why, d.clause + " needs exactly one sub-derivation");
  }
  const Derivation& parent = d.subs[0];
  if (parent.seed_index != d.seed_index) {
    return fail(why, "accessibility chain changes seed");
  }
  if (d.clause == "Acc2") {
    if (parent.term->kind() != Term::Kind::Abs ||
        !alpha_equal(parent.term->body(), d.term)) {
      return fail(why, "Acc2 parent is not an abstraction over the term");
    }
  } else if (d.clause == "Acc3") {
    if (parent.term->kind() != Term::Kind::Fun ||
        !sig.is_constructor(parent.term->name())) {
      return fail(why, "Acc3 parent is not a constructor application");
    }
    bool found = false;
    for (const auto& a : parent.term->args()) {
      if (alpha_equal(a, d.term)) {
        found = true;
        break;
      }
    }
    if (!found) return fail(why, "Acc3 term is not an argument of the parent");
  } else if (d.clause == "Acc4") {
    if (parent.term->kind() != Term::Kind::App ||
        parent.term->arg()->kind() != Term::Kind::Var ||
        !alpha_equal(parent.term->fn(), d.term)) {
      return fail(why, "Acc4 parent is not the term applied to a variable");
    }
    const std::string& x = parent.term->arg()->name();
    if (has_free_var(d.term, x) || free_vars(seed).count(x)) {
      return fail(why, "Acc4 applied variable is not fresh");
    }
  } else {
    return fail(why, "unknown accessibility clause " + d.clause);
  }
  return replay_acc(sig, seeds, parent, why);
}

bool replay_cc(const Signature& sig, const std::string& f,
               const std::vector<TermPtr>& seeds, const Derivation& d,
               std::string* why);

bool replay_argcompare(const Signature& sig, const std::string& f,
                       const std::vector<TermPtr>& seeds, const ArgCompare& ac,
                       std::string* why) {
  if (!ac.left || !ac.right ||
      !comparable_types(sig, ac.left->type(), ac.right->type())) {
    return fail(why, "comparison sides missing or of incomparable types");
  }
  if (!ac.constructor_path) {
    if (!is_capture_free_subterm_at(ac.left, ac.position, ac.right)) {
      return fail(why, "subterm witness does not hold at the stated position");
    }
    return true;
  }
  if (ac.position.empty()) {
    return fail(why, "constructor-path witness at the root position");
  }
  if (!sig.is_sp_inductive(ac.left->type())) {
    return fail(why,
                "constructor-path witness at a type that is not a strictly "
                "positive inductive type");
  }
  TermPtr node = ac.left;
  for (int step : ac.position) {
    if (node->kind() != Term::Kind::Fun || !sig.is_constructor(node->name())) {
      return fail(why, "path prefix is not constructor-headed");
    }
    if (step < 1 || step > static_cast<int>(node->args().size())) {
      return fail(why, "path step out of range");
    }
    node = node->args()[step - 1];
  }
  TermPtr rebuilt = node;
  for (const auto& a : ac.applied) {
    try {
      rebuilt = Term::app(rebuilt, a);
    } catch (const TypeError&) {
      return fail(why, "applied vector does not fit the extracted subterm");
    }
  }
  if (!alpha_equal(rebuilt, ac.right)) {
    return fail(why, "extracted subterm applied to the vector is not the "
                     "right-hand side of the comparison");
  }
  if (ac.applied.size() != ac.applied_closure.size()) {
    return fail(why, "applied vector without matching closure derivations");
  }
  for (size_t i = 0; i < ac.applied.size(); ++i) {
    if (!alpha_equal(ac.applied_closure[i].term, ac.applied[i])) {
      return fail(why, "closure derivation does not cover the applied term");
    }
    if (!replay_cc(sig, f, seeds, ac.applied_closure[i], why)) return false;
  }
  return true;
}

bool replay_status(const Signature& sig, const std::string& f,
                   const std::vector<TermPtr>& seeds, const StatusEvidence& ev,
                   std::string* why) {
  if (ev.left.size() != seeds.size()) {
    return fail(why, "status evidence left vector differs from the rule");
  }
  for (size_t i = 0; i < seeds.size(); ++i) {
    if (!alpha_equal(ev.left[i], seeds[i])) {
      return fail(why, "status evidence left vector differs from the rule");
    }
  }
  if (!(ev.status == sig.decl(f).status)) {
    return fail(why, "status evidence uses a different status than the symbol");
  }
  if (ev.deciding_group != static_cast<int>(ev.groups.size()) - 1 ||
      ev.groups.empty() ||
      ev.groups.size() > ev.status.groups.size()) {
    return fail(why, "status evidence group structure is malformed");
  }
  for (size_t gi = 0; gi < ev.groups.size(); ++gi) {
    const GroupEvidence& ge = ev.groups[gi];
    if (ge.indices != ev.status.groups[gi]) {
      return fail(why, "status evidence group indices diverge from the status");
    }
    std::vector<TermPtr> left, right;
    for (int idx : ge.indices) {
      if (idx < 1 || idx > static_cast<int>(ev.left.size()) ||
          idx > static_cast<int>(ev.right.size())) {
        return fail(why, "status index out of range in evidence");
      }
      left.push_back(ev.left[idx - 1]);
      right.push_back(ev.right[idx - 1]);
    }
    std::vector<bool> used(right.size(), false);
    std::vector<TermPtr> lrem, rrem;
    for (const auto& l : left) {
      bool matched = false;
      for (size_t j = 0; j < right.size(); ++j) {
        if (!used[j] && alpha_equal(l, right[j])) {
          used[j] = true;
          matched = true;
          break;
        }
      }
      if (!matched) lrem.push_back(l);
    }
    for (size_t j = 0; j < right.size(); ++j) {
      if (!used[j]) rrem.push_back(right[j]);
    }
    const bool deciding = gi + 1 == ev.groups.size();
    if (!deciding) {
      if (!ge.equal || !lrem.empty() || !rrem.empty()) {
        return fail(why, "non-deciding status group is not an equality");
      }
      continue;
    }
    if (ge.equal || lrem.empty()) {
      return fail(why, "deciding status group does not strictly decrease");
    }
    for (const auto& r : rrem) {
      const ArgCompare* found = nullptr;
      for (const auto& ac : ge.dominations) {
        if (!alpha_equal(ac.right, r)) continue;
        bool left_ok = false;
        for (const auto& l : lrem) {
          if (alpha_equal(ac.left, l)) {
            left_ok = true;
            break;
          }
        }
        if (left_ok) {
          found = &ac;
          break;
        }
      }
      if (!found) {
        return fail(why, "remaining call argument " + to_string(r) +
                             " has no domination witness");
      }
      if (!replay_argcompare(sig, f, seeds, *found, why)) return false;
    }
  }
  return true;
}

bool replay_cc(const Signature& sig, const std::string& f,
               const std::vector<TermPtr>& seeds, const Derivation& d,
               std::string* why) {
  if (!d.term) return fail(why, "derivation node without a term");
  if (d.clause == "CC1") {
    if (d.term->kind() != Term::Kind::Var) {
      return fail(why, "CC1 term is not a variable");
    }
    return true;
  }
  if (d.clause == "CC2") {
    if (d.subs.size() != 1) {
      return fail(why, "CC2 needs exactly one accessibility sub-derivation");
    }
    if (!alpha_equal(d.subs[0].term, d.term)) {
      return fail(why, "CC2 sub-derivation derives a different term");
    }
    return replay_acc(sig, seeds, d.subs[0], why);
  }
  if (d.clause == "CC3") {
    if (d.term->kind() != Term::Kind::App || d.subs.size() != 2) {
      return fail(why, "CC3 needs an application and two sub-derivations");
    }
    if (!alpha_equal(d.subs[0].term, d.term->fn()) ||
        !alpha_equal(d.subs[1].term, d.term->arg())) {
      return fail(why, "CC3 sub-derivations do not cover the application");
    }
    return replay_cc(sig, f, seeds, d.subs[0], why) &&
           replay_cc(sig, f, seeds, d.subs[1], why);
  }
  if (d.clause == "CC4") {
    if (d.term->kind() != Term::Kind::Abs || d.subs.size() != 1) {
      return fail(why, "CC4 needs an abstraction and one sub-derivation");
    }
    if (!alpha_equal(d.subs[0].term, d.term->body())) {
      return fail(why, "CC4 sub-derivation does not cover the body");
    }
    return replay_cc(sig, f, seeds, d.subs[0], why);
  }
  if (d.clause == "CC5" || d.clause == "CC6") {
    if (d.term->kind() != Term::Kind::Fun || d.symbol != d.term->name()) {
      return fail(why, d.clause + " term is not an application of " + d.symbol);
    }
    const auto& args = d.term->args();
    if (d.subs.size() != args.size()) {
      return fail(why, d.clause + " does not derive every argument");
    }
    for (size_t i = 0; i < args.size(); ++i) {
      if (!alpha_equal(d.subs[i].term, args[i])) {
        return fail(why, d.clause + " sub-derivation order mismatch");
      }
      if (!replay_cc(sig, f, seeds, d.subs[i], why)) return false;
    }
    if (d.clause == "CC5") {
      if (!sig.prec_greater(f, d.symbol)) {
        return fail(why, "CC5 head is not strictly below " + f);
      }
      return true;
    }
    if (!(d.symbol == f || sig.prec_equiv(f, d.symbol))) {
      return fail(why, "CC6 head is not equivalent to " + f);
    }
    if (!d.status_cmp) {
      return fail(why, "CC6 without status comparison evidence");
    }
    return replay_status(sig, f, seeds, *d.status_cmp, why);
  }
  return fail(why, "unknown closure clause " + d.clause);
}

}  // namespace

bool replay_derivation(const Signature& sig, const std::string& f,
                       const std::vector<TermPtr>& lhs_args,
                       const Derivation& d, std::string* why) {
  if (d.clause.rfind("Acc", 0) == 0) {
    return replay_acc(sig, lhs_args, d, why);
  }
  return replay_cc(sig, f, lhs_args, d, why);
}

// ---------------------------------------------------------------------------
// Rendering.

namespace {

std::string group_summary(const GroupEvidence& ge) {
  return ge.equal ? "eq" : "mul-dec";
}

void render(const Derivation& d, int indent, std::ostringstream& os) {
  os << std::string(indent * 2, ' ') << d.clause;
  if (!d.symbol.empty()) os << "[" << d.symbol << "]";
  os << " " << to_string(d.term);
  if (d.clause == "CC2" || d.clause == "Acc1") {
    if (d.seed_index >= 0) os << "  (argument " << d.seed_index + 1 << ")";
  }
  if (d.status_cmp) {
    os << "  status " << to_string(d.status_cmp->status) << ":";
    for (const auto& ge : d.status_cmp->groups) os << " " << group_summary(ge);
  }
  os << "\n";
  for (const auto& s : d.subs) render(s, indent + 1, os);
  if (d.status_cmp) {
    for (const auto& ge : d.status_cmp->groups) {
      for (const auto& ac : ge.dominations) {
        os << std::string((indent + 1) * 2, ' ') << "> " << to_string(ac.left)
           << " above " << to_string(ac.right)
           << (ac.constructor_path ? " (constructor path " : " (subterm ")
           << position_to_string(ac.position) << ")\n";
        for (const auto& sub : ac.applied_closure) {
          render(sub, indent + 2, os);
        }
      }
    }
  }
}

}  // namespace

std::string to_string(const Derivation& d) {
  std::ostringstream os;
  render(d, 0, os);
  return os.str();
}

std::string summary_line(const Derivation& d) {
  std::ostringstream os;
  os << d.clause;
  if (!d.symbol.empty()) os << "[" << d.symbol << "]";
  bool open = false;
  if (!d.subs.empty()) {
    os << " { " << (d.term->kind() == Term::Kind::Fun ? "args: " : "");
    for (size_t i = 0; i < d.subs.size(); ++i) {
      if (i) os << ", ";
      os << d.subs[i].clause;
    }
    open = true;
  }
  if (d.status_cmp) {
    os << (open ? "; " : " { ");
    open = true;
    os << "status " << to_string(d.status_cmp->status) << ":";
    for (size_t i = 0; i < d.status_cmp->groups.size(); ++i) {
      os << (i ? ", " : " ") << group_summary(d.status_cmp->groups[i]);
    }
  }
  if (open) os << " }";
  return os.str();
}

}  // namespace idts
