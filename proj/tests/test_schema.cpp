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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "idts/errors.hpp"
#include "idts/parser.hpp"
#include "idts/rewrite.hpp"
#include "idts/schema.hpp"
#include "idts/signature.hpp"
#include "idts/term.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace idts;
using idts::testing::load_fixture;

namespace {

const Type kNat = Type::ind("nat");

TermPtr tp(const SpecFile& f, const std::string& text) {
  std::string err;
  TermPtr t = parse_term(text, *f.sig, &err);
  if (!t) throw std::runtime_error("parse_term(" + text + "): " + err);
  return t;
}

bool acc_has(const AccSet& acc, const TermPtr& t) {
  return acc.members.count(canonical_key(t)) > 0;
}

// data / proc skeleton with one defined symbol g : proc -> proc.
std::shared_ptr<Signature> proc_sig(bool g_above_d0) {
  auto sig = std::make_shared<Signature>();
  sig->declare_inductive("data");
  sig->declare_constructor("data", "d0", {});
  sig->declare_inductive("proc");
  sig->declare_constructor("proc", "delta", {});
  sig->declare_constructor(
      "proc", "sigma", {Type::arrow(Type::ind("data"), Type::ind("proc"))});
  sig->declare_symbol("g", Type::arrow(Type::ind("proc"), Type::ind("proc")),
                      1);
  if (g_above_d0) sig->add_precedence_greater("g", "d0");
  sig->seal();
  return sig;
}

}  // namespace

TEST_CASE("accessible subterms of a seed") {
  SpecFile f = load_fixture("append.idts");
  const Signature& sig = *f.sig;

  TermPtr X = Term::var("X", kNat);
  TermPtr L = Term::var("L", Type::ind("listnat"));
  TermPtr seed = sig.make_fun("cons", {sig.make_fun("s", {X}), L});

  AccSet acc = accessible(sig, seed);
  CHECK(acc_has(acc, seed));                       // the seed itself
  CHECK(acc_has(acc, sig.make_fun("s", {X})));     // constructor argument
  CHECK(acc_has(acc, L));
  CHECK(acc_has(acc, X));                          // nested constructor path
  CHECK_FALSE(acc_has(acc, sig.make_fun("nil", {})));  // unrelated term

  // Abstraction bodies are accessible (the binder occurrence goes free).
  TermPtr lam = Term::abs("x", kNat, sig.make_fun("s", {Term::var("x", kNat)}));
  AccSet acc2 = accessible(sig, lam);
  CHECK(acc_has(acc2, sig.make_fun("s", {Term::var("x", kNat)})));

  // Derivations of members start from the seed clause.
  REQUIRE(acc.members.count(canonical_key(X)) == 1);
  const Derivation& d = acc.members.at(canonical_key(X)).second;
  CHECK_FALSE(d.clause.empty());

  // acc_vector records which argument seeded each member.
  AccSet over_args = acc_vector(sig, {sig.make_fun("s", {X}), L});
  CHECK(acc_has(over_args, X));
  CHECK(acc_has(over_args, L));
}

TEST_CASE("argument order: constructor descent") {
  SpecFile f = load_fixture("append.idts");
  const Signature& sig = *f.sig;
  TermPtr X = Term::var("X", kNat);
  TermPtr L = Term::var("L", Type::ind("listnat"));
  TermPtr lst = sig.make_fun("cons", {X, L});

  CHECK(greater_arg(sig, lst, L));
  CHECK(greater_arg(sig, sig.make_fun("s", {X}), X));
  CHECK(greater_arg(sig, sig.make_fun("cons", {X, lst}), lst));
  CHECK_FALSE(greater_arg(sig, X, X));                   // irreflexive
  CHECK_FALSE(greater_arg(sig, lst, lst));
  CHECK_FALSE(greater_arg(sig, X, sig.make_fun("s", {X})));
  CHECK_FALSE(greater_arg(sig, lst, Term::var("M", Type::ind("listnat"))));

  auto ws = greater_arg_witnesses(sig, lst, L);
  REQUIRE_FALSE(ws.empty());
  CHECK(ws[0].constructor_path);
  CHECK(ws[0].position == TermPos{2});
  CHECK(ws[0].applied.empty());

  // The order compares terms of one type or of one mutual class; listnat
  // against nat sits in neither case and is a contract violation, as is an
  // unrelated pair of basic types.
  CHECK_THROWS_AS(greater_arg(sig, lst, X), TypeError);
  CHECK_THROWS_AS(greater_arg(sig, X, Term::var("B", Type::ind("listnat"))),
                  TypeError);
}

TEST_CASE("argument order inside a mutually inductive class") {
  SpecFile f = load_fixture("treerec.idts");
  const Signature& sig = *f.sig;
  TermPtr L = Term::var("L", Type::ind("listtree"));
  TermPtr tree_of = sig.make_fun("node", {L});
  // node(L) : tree against L : listtree crosses member types of one class.
  CHECK(greater_arg(sig, tree_of, L));
  CHECK_FALSE(greater_arg(sig, L, tree_of));

  TermPtr T = Term::var("T", Type::ind("tree"));
  TermPtr packed = sig.make_fun("cons", {T, L});
  CHECK(greater_arg(sig, packed, T));
  CHECK(greater_arg(sig, packed, L));
}

TEST_CASE("argument order: applied higher-order constructor arguments") {
  SpecFile f = load_fixture("ord_addition.idts");
  const Signature& sig = *f.sig;
  Type n2o = Type::arrow(kNat, Type::ind("ord"));
  TermPtr F = Term::var("F", n2o);
  TermPtr N = Term::var("n", kNat);
  TermPtr limF = sig.make_fun("lim", {F});
  TermPtr applied = Term::app(F, N);

  CHECK(greater_arg(sig, limF, applied));
  auto ws = greater_arg_witnesses(sig, limF, applied);
  REQUIRE_FALSE(ws.empty());
  CHECK(ws[0].constructor_path);
  REQUIRE(ws[0].applied.size() == 1);
  CHECK(alpha_equal(ws[0].applied[0], N));

  // Applying a different function variable does not shrink.
  TermPtr G = Term::var("G", n2o);
  CHECK_FALSE(greater_arg(sig, limF, Term::app(G, N)));
}

TEST_CASE("argument order: capture-free subterm fallback") {
  SpecFile f = load_fixture("bin.idts");
  const Signature& sig = *f.sig;
  TermPtr x = Term::var("x", kNat);
  TermPtr y = Term::var("y", kNat);
  // plus is a defined symbol, so no constructor path leads below it.
  TermPtr u = sig.make_fun("plus", {x, y});
  CHECK(greater_arg(sig, u, x));
  CHECK(greater_arg(sig, u, y));
  auto ws = greater_arg_witnesses(sig, u, x);
  REQUIRE_FALSE(ws.empty());
  CHECK_FALSE(ws[0].constructor_path);

  // Crossing a binder is fine only when the subterm does not mention it.
  SpecFile fs = load_fixture("foldl_sum.idts");
  const Signature& fsig = *fs.sig;
  TermPtr body = fsig.make_fun("plus", {x, y});
  TermPtr lam = Term::abs("x", kNat, Term::abs("y", kNat, body));
  TermPtr zc = fsig.make_fun("z", {});
  TermPtr L = Term::var("L", Type::ind("listnat"));
  TermPtr call = fsig.make_fun("foldl", {lam, zc, L});
  CHECK(greater_arg(fsig, call, zc));          // no binder mentions z
  CHECK_FALSE(greater_arg(fsig, call, body));  // x and y would escape
  TermPtr closed = Term::abs("x", kNat, Term::abs("y", kNat, zc));
  CHECK(greater_arg(fsig, fsig.make_fun("foldl", {closed, x, L}), zc));
}

TEST_CASE("status comparison against the integer oracle") {
  auto greater = [](int a, int b) { return a > b; };
  auto equal = [](int a, int b) { return a == b; };

  std::vector<Status> statuses = {
      Status{{{1}, {2}}},
      Status{{{2}, {1}}},
      Status{{{1, 2}}},
      Status{{{2}}},
      Status{{{1}, {2}, {3}}},
      Status{{{1, 3}, {2}}},
  };
  std::vector<std::vector<int>> tuples;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) tuples.push_back({a, b, c});

  for (const Status& st : statuses) {
    for (const auto& u : tuples) {
      for (const auto& v : tuples) {
        bool lib = status_greater_generic(st, u, v, greater, equal);
        bool oracle = idts::testing::status_greater_ints(st.groups, u, v);
        INFO("status ", to_string(st), " u=", u[0], u[1], u[2], " v=", v[0],
             v[1], v[2]);
        CHECK(lib == oracle);
      }
    }
  }
}

TEST_CASE("status comparison over terms") {
  SpecFile f = load_fixture("ack.idts");
  const Signature& sig = *f.sig;
  TermPtr X = Term::var("X", kNat);
  TermPtr Y = Term::var("Y", kNat);
  TermPtr sX = sig.make_fun("s", {X});
  TermPtr sY = sig.make_fun("s", {Y});
  Status lex2 = Status::default_for(2);

  // First group decides.
  CHECK(status_greater(sig, lex2, {sX, Y}, {X, sY}));
  CHECK_FALSE(status_greater(sig, lex2, {X, Y}, {sX, Y}));
  // Equal first group, second group decides.
  CHECK(status_greater(sig, lex2, {sX, sY}, {sX, Y}));
  CHECK_FALSE(status_greater(sig, lex2, {sX, Y}, {sX, sY}));
  // All groups equal: not strictly greater.
  CHECK_FALSE(status_greater(sig, lex2, {sX, Y}, {sX, Y}));

  // Multiset group: permutation is equality.
  Status joint{{{1, 2}}};
  CHECK_FALSE(status_greater(sig, joint, {sX, Y}, {Y, sX}));
  CHECK(status_greater(sig, joint, {sX, Y}, {X, Y}));
  // One big element may absorb several smaller ones.
  CHECK(status_greater(sig, joint, {sig.make_fun("s", {sX}), Y},
                       {sX, X}));

  // Compared pairs must share a type.
  SpecFile ins = load_fixture("insert.idts");
  CHECK_THROWS_AS(
      status_greater(*ins.sig, Status{{{1}}},
                     {Term::var("X", Type::ind("nat"))},
                     {Term::var("B", Type::ind("bool"))}),
      TypeError);
}

TEST_CASE("closure search produces a replayable certificate") {
  SpecFile f = load_fixture("append.idts");
  const Rule& snoc = f.rules->rules()[1];  // append(cons(X, L), M) --> ...
  ClosureSearch search(*f.sig, snoc.head(), snoc.lhs->args());
  auto deriv = search.check(snoc.rhs);
  REQUIRE(deriv.has_value());
  CHECK(deriv->clause == "CC5");  // cons sits below append
  CHECK(deriv->symbol == "cons");
  REQUIRE(deriv->subs.size() == 2);

  const Derivation& rec_call = deriv->subs[1];
  CHECK(rec_call.clause == "CC6");
  CHECK(rec_call.symbol == "append");
  REQUIRE(rec_call.status_cmp.has_value());
  CHECK(rec_call.status_cmp->deciding_group == 0);
  REQUIRE_FALSE(rec_call.status_cmp->groups.empty());
  CHECK_FALSE(rec_call.status_cmp->groups[0].equal);

  std::string why;
  CHECK(replay_derivation(*f.sig, snoc.head(), snoc.lhs->args(), *deriv, &why));
  CHECK(why.empty());

  CHECK_FALSE(to_string(*deriv).empty());
  CHECK_FALSE(summary_line(*deriv).empty());

  // Terms outside the closure are refused with a diagnostic.
  ClosureSearch bad(*f.sig, snoc.head(), snoc.lhs->args());
  TermPtr foreign = f.sig->make_fun(
      "append", {Term::var("M", Type::ind("listnat")),
                 Term::var("M", Type::ind("listnat"))});
  CHECK_FALSE(bad.check(foreign).has_value());
  CHECK(bad.failure().has_value());
}

TEST_CASE("tampered certificates do not replay") {
  SpecFile f = load_fixture("append.idts");
  const Rule& snoc = f.rules->rules()[1];
  ClosureSearch search(*f.sig, snoc.head(), snoc.lhs->args());
  auto deriv = search.check(snoc.rhs);
  REQUIRE(deriv.has_value());

  Derivation wrong_clause = *deriv;
  wrong_clause.clause = "CC1";
  std::string why;
  CHECK_FALSE(replay_derivation(*f.sig, snoc.head(), snoc.lhs->args(),
                                wrong_clause, &why));
  CHECK_FALSE(why.empty());

  Derivation wrong_term = *deriv;
  wrong_term.term = f.sig->make_fun("nil", {});
  CHECK_FALSE(replay_derivation(*f.sig, snoc.head(), snoc.lhs->args(),
                                wrong_term, nullptr));

  // Swapping in another rule's context also fails: the recursive call is
  // not status-smaller than itself.
  CHECK_FALSE(replay_derivation(*f.sig, snoc.head(),
                                {snoc.rhs->args()[1], snoc.lhs->args()[1]},
                                *deriv, nullptr));
}

TEST_CASE("closure side condition on applied arguments") {
  // g(sigma(X)) --> g((X d0)): the argument (X d0) shrinks along the
  // constructor path through sigma, but only if the applied term d0 itself
  // belongs to the closure, which needs g above d0 in the precedence.
  for (bool with_edge : {false, true}) {
    auto sig = proc_sig(with_edge);
    auto rs = RuleSystem{std::shared_ptr<const Signature>(sig)};
    TermPtr X = Term::var("X", Type::arrow(Type::ind("data"), Type::ind("proc")));
    Rule r{sig->make_fun("g", {sig->make_fun("sigma", {X})}),
           sig->make_fun("g", {Term::app(X, sig->make_fun("d0", {}))}),
           {},
           ""};
    int idx = rs.add_rule(r);
    RuleVerdict v = check_rule_schema(rs, idx);
    CHECK(v.accepted == with_edge);
    if (!with_edge) {
      CHECK_FALSE(v.failure.empty());
    } else {
      REQUIRE(v.rhs_derivation.has_value());
      std::string why;
      CHECK(replay_derivation(*sig, "g", r.lhs->args(), *v.rhs_derivation,
                              &why));
    }
  }
}

TEST_CASE("fixture systems pass or fail as designed") {
  using idts::testing::accepted_fixtures;
  for (const std::string& name : accepted_fixtures()) {
    INFO("fixture ", name);
    SpecFile f = load_fixture(name);
    SchemaReport rep = check_system(*f.rules);
    CHECK(rep.positivity_ok);
    CHECK(rep.declarations_ok);
    CHECK(rep.all_rules_accepted);
    CHECK(rep.accepted_overall);
    for (const RuleVerdict& v : rep.rules) {
      INFO("rule ", v.rule_index, " head ", v.head);
      CHECK(v.accepted);
    }
  }

  std::set<std::string> no_guarantee = {"differentiation.idts",
                                        "proc_algebra.idts", "nnf.idts",
                                        "miniscoping.idts"};
  for (const std::string& name : accepted_fixtures()) {
    SpecFile f = load_fixture(name);
    SchemaReport rep = check_system(*f.rules);
    INFO("fixture ", name);
    CHECK(rep.sn_guaranteed == (no_guarantee.count(name) == 0));
    CHECK(rep.constructor_rules_present == (no_guarantee.count(name) > 0));
  }
}

TEST_CASE("division rejects exactly the non-structural recursion") {
  SpecFile f = load_fixture("division.idts");
  SchemaReport rep = check_system(*f.rules);
  CHECK(rep.positivity_ok);
  CHECK(rep.declarations_ok);
  CHECK_FALSE(rep.all_rules_accepted);
  CHECK_FALSE(rep.accepted_overall);
  REQUIRE(rep.rules.size() == 6);
  for (int i = 0; i < 5; ++i) {
    INFO("rule ", i);
    CHECK(rep.rules[i].accepted);
  }
  const RuleVerdict& bad = rep.rules[5];
  CHECK_FALSE(bad.accepted);
  CHECK(bad.head == "div");
  CHECK_FALSE(bad.failure.empty());
  REQUIRE(bad.diag.has_value());
  CHECK(alpha_equal(bad.diag->term, tp(f, "div(minus(X, Y), s(Y))")));
  CHECK(bad.diag->reason.find("minus(X, Y)") != std::string::npos);
}

TEST_CASE("rejection is stable under renaming the rule variables") {
  SpecFile f = load_fixture("division.idts");
  RuleSystem rs{f.rules->sig_ptr()};
  TermPtr A = Term::var("alpha", kNat);
  TermPtr B = Term::var("beta", kNat);
  const Signature& sig = *f.sig;
  Rule renamed{
      sig.make_fun("div", {sig.make_fun("s", {A}), sig.make_fun("s", {B})}),
      sig.make_fun("s",
                   {sig.make_fun("div", {sig.make_fun("minus", {A, B}),
                                         sig.make_fun("s", {B})})}),
      {},
      ""};
  int idx = rs.add_rule(renamed);
  RuleVerdict v = check_rule_schema(rs, idx);
  CHECK_FALSE(v.accepted);
  CHECK_FALSE(v.failure.empty());
}

TEST_CASE("positivity failures poison the system verdict") {
  SpecFile f = load_fixture("positivity_reject.idts");
  SchemaReport rep = check_system(*f.rules);
  CHECK_FALSE(rep.positivity_ok);
  CHECK_FALSE(rep.sn_guaranteed);
  CHECK_FALSE(rep.accepted_overall);
  CHECK(rep.rules.empty());
}

TEST_CASE("precedence cycles poison the declaration verdict") {
  auto sig = std::make_shared<Signature>();
  sig->declare_inductive("nat");
  sig->declare_constructor("nat", "z", {});
  sig->declare_constructor("nat", "s", {kNat});
  sig->declare_symbol("p", Type::arrow(kNat, kNat), 1);
  sig->declare_symbol("q", Type::arrow(kNat, kNat), 1);
  sig->add_precedence_greater("p", "q");
  sig->add_precedence_greater("q", "p");
  sig->seal();
  RuleSystem rs{std::shared_ptr<const Signature>(sig)};
  SchemaReport rep = check_system(rs);
  CHECK(rep.positivity_ok);
  CHECK_FALSE(rep.declarations_ok);
  CHECK_FALSE(rep.sn_guaranteed);
  CHECK_FALSE(rep.accepted_overall);
}

TEST_CASE("conditional rules carry certificates for both condition sides") {
  SpecFile f = load_fixture("insert.idts");
  SchemaReport rep = check_system(*f.rules);
  REQUIRE(rep.all_rules_accepted);
  bool saw_conditional = false;
  for (const RuleVerdict& v : rep.rules) {
    const Rule& r = f.rules->rules()[v.rule_index];
    if (!r.conditional()) continue;
    saw_conditional = true;
    CHECK(v.condition_derivations.size() == 2 * r.conditions.size());
    for (const Derivation& d : v.condition_derivations) {
      std::string why;
      CHECK(replay_derivation(*f.sig, r.head(), r.lhs->args(), d, &why));
    }
  }
  CHECK(saw_conditional);
}

TEST_CASE("every accepted fixture verdict replays") {
  for (const std::string& name : idts::testing::accepted_fixtures()) {
    SpecFile f = load_fixture(name);
    SchemaReport rep = check_system(*f.rules);
    for (const RuleVerdict& v : rep.rules) {
      const Rule& r = f.rules->rules()[v.rule_index];
      INFO("fixture ", name, " rule ", v.rule_index);
      REQUIRE(v.rhs_derivation.has_value());
      std::string why;
      CHECK(replay_derivation(*f.sig, r.head(), r.lhs->args(),
                              *v.rhs_derivation, &why));
      for (const auto& [var, d] : v.fv_access) {
        CHECK(replay_derivation(*f.sig, r.head(), r.lhs->args(), d, &why));
      }
    }
  }
}
