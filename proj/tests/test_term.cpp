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
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "idts/errors.hpp"
#include "idts/term.hpp"
#include "idts/type.hpp"

using namespace idts;

namespace {

const Type kNat = Type::ind("nat");
const Type kOrd = Type::ind("ord");
const Type kNat2Nat = Type::arrow(kNat, kNat);

TermPtr z() { return Term::fun("z", {}, kNat, {}); }
TermPtr s(TermPtr a) { return Term::fun("s", {kNat}, kNat, {std::move(a)}); }
TermPtr num(int n) {
  TermPtr t = z();
  for (int i = 0; i < n; ++i) t = s(std::move(t));
  return t;
}

}  // namespace

TEST_CASE("factories validate and cache types") {
  TermPtr x = Term::var("x", kNat);
  CHECK(x->kind() == Term::Kind::Var);
  CHECK(x->type() == kNat);
  CHECK(x->name() == "x");
  CHECK(x->node_count() == 1);

  TermPtr id = Term::abs("x", kNat, x);
  CHECK(id->kind() == Term::Kind::Abs);
  CHECK(id->type() == kNat2Nat);
  CHECK(id->binder_type() == kNat);
  CHECK(id->body()->name() == "x");
  CHECK(id->node_count() == 2);

  TermPtr applied = Term::app(id, num(1));
  CHECK(applied->kind() == Term::Kind::App);
  CHECK(applied->type() == kNat);
  CHECK(applied->fn() == id);
  CHECK(applied->node_count() == 2 + 1 + 2);

  CHECK(num(2)->node_count() == 3);
  CHECK(num(2)->args().size() == 1);

  // Domain mismatches and arity mismatches are contract violations.
  TermPtr o = Term::var("o", kOrd);
  CHECK_THROWS_AS(Term::app(id, o), TypeError);
  CHECK_THROWS_AS(Term::app(x, x), TypeError);  // nat is not a function type
  CHECK_THROWS_AS(Term::fun("s", {kNat}, kNat, {o}), TypeError);
  CHECK_THROWS_AS(Term::fun("s", {kNat}, kNat, {num(0), num(0)}), TypeError);
}

TEST_CASE("alpha equality ignores binder spelling only") {
  TermPtr a = Term::abs("x", kNat, Term::var("x", kNat));
  TermPtr b = Term::abs("y", kNat, Term::var("y", kNat));
  CHECK(alpha_equal(a, b));
  CHECK(canonical_key(a) == canonical_key(b));

  // Binder type matters.
  TermPtr c = Term::abs("x", kOrd, Term::var("x", kOrd));
  CHECK_FALSE(alpha_equal(a, c));
  CHECK(canonical_key(a) != canonical_key(c));

  // Free variable names matter.
  TermPtr fx = Term::abs("b", kNat, Term::var("x", kNat));
  TermPtr fy = Term::abs("b", kNat, Term::var("y", kNat));
  CHECK_FALSE(alpha_equal(fx, fy));
  CHECK(canonical_key(fx) != canonical_key(fy));

  // Crossed binders: \x.\y. x y  vs  \y.\x. y x  are alpha-equal, but
  // \x.\y. y x is not.
  auto two_abs = [](const std::string& o, const std::string& i,
                    const std::string& head, const std::string& arg) {
    TermPtr body = Term::app(Term::var(head, kNat2Nat), Term::var(arg, kNat));
    return Term::abs(o, kNat2Nat, Term::abs(i, kNat, body));
  };
  CHECK(alpha_equal(two_abs("x", "y", "x", "y"), two_abs("y", "x", "y", "x")));
  CHECK_FALSE(
      alpha_equal(two_abs("x", "y", "x", "y"), two_abs("x", "y", "x", "x")));

  CHECK(alpha_equal(num(3), num(3)));
  CHECK_FALSE(alpha_equal(num(3), num(4)));
}

TEST_CASE("free variables and their types") {
  TermPtr f = Term::var("f", kNat2Nat);
  TermPtr x = Term::var("x", kNat);
  TermPtr t = Term::abs("x", kNat, Term::app(f, x));
  CHECK(free_vars(t) == std::set<std::string>{"f"});
  CHECK(has_free_var(t, "f"));
  CHECK_FALSE(has_free_var(t, "x"));

  auto typed = free_vars_typed(Term::app(f, x));
  REQUIRE(typed.size() == 2);
  CHECK(typed.at("f") == kNat2Nat);
  CHECK(typed.at("x") == kNat);

  CHECK(free_vars(num(4)).empty());
}

TEST_CASE("substitution is capture-avoiding") {
  Substitution theta;
  theta.bind("y", num(2));
  TermPtr t = Term::app(Term::var("f", kNat2Nat), Term::var("y", kNat));
  TermPtr r = substitute(t, theta);
  CHECK(to_string(r) == "(f s(s(z)))");

  // Binders shadow: no substitution under a binder of the same name.
  TermPtr shadow = Term::abs("y", kNat, Term::var("y", kNat));
  CHECK(alpha_equal(substitute(shadow, theta), shadow));

  // Classic capture case: [y := x](\x:nat. y) must rename the binder.
  Substitution cap;
  cap.bind("y", Term::var("x", kNat));
  TermPtr body_y = Term::abs("x", kNat, Term::var("y", kNat));
  TermPtr res = substitute(body_y, cap);
  REQUIRE(res->kind() == Term::Kind::Abs);
  CHECK(res->body()->name() == "x");  // the substituted free x
  CHECK(res->name() != "x");          // binder renamed away
  CHECK(free_vars(res) == std::set<std::string>{"x"});
  CHECK(alpha_equal(res, Term::abs("w", kNat, Term::var("x", kNat))));

  // Identity bindings are dropped at bind time.
  Substitution idb;
  idb.bind("v", Term::var("v", kNat));
  CHECK(idb.empty());

  // Image type must match the variable occurrence type.
  Substitution wrong;
  wrong.bind("y", Term::var("o", kOrd));
  CHECK_THROWS_AS(substitute(t, wrong), TypeError);
}

TEST_CASE("positions address every node in preorder") {
  // t = s(ap) with ap = ((\x:nat. x) z)
  TermPtr id = Term::abs("x", kNat, Term::var("x", kNat));
  TermPtr ap = Term::app(id, z());
  TermPtr t = s(ap);

  auto ps = all_positions(t);
  std::vector<TermPos> expect = {{}, {1}, {1, 1}, {1, 1, 1}, {1, 2}};
  CHECK(ps == expect);
  CHECK(ps.size() == t->node_count());

  CHECK(alpha_equal(subterm_at(t, {}), t));
  CHECK(alpha_equal(subterm_at(t, {1}), ap));
  CHECK(alpha_equal(subterm_at(t, {1, 2}), z()));

  // Descending into an abstraction body frees the binder occurrence.
  TermPtr under = subterm_at(t, {1, 1, 1});
  CHECK(under->kind() == Term::Kind::Var);
  CHECK(under->name() == "x");
  CHECK(free_vars(under) == std::set<std::string>{"x"});

  CHECK_THROWS_AS(subterm_at(t, {2}), PositionError);
  CHECK_THROWS_AS(subterm_at(t, {1, 3}), PositionError);
}

TEST_CASE("replace_at round trip and type discipline") {
  TermPtr id = Term::abs("x", kNat, Term::var("x", kNat));
  TermPtr t = s(Term::app(id, s(z())));

  for (const TermPos& p : all_positions(t)) {
    CHECK(alpha_equal(replace_at(t, p, subterm_at(t, p)), t));
  }

  TermPtr swapped = replace_at(t, {1, 2}, num(3));
  CHECK(to_string(swapped) == "s((\\x:nat. x s(s(s(z)))))");

  CHECK_THROWS_AS(replace_at(t, {1, 2}, Term::var("o", kOrd)), TypeError);
  CHECK_THROWS_AS(replace_at(t, {9}, z()), PositionError);
}

TEST_CASE("fresh_name avoids a blocked set") {
  std::set<std::string> avoid = {"x", "x_1", "y_1"};
  CHECK(fresh_name("q", avoid) == "q");
  CHECK(fresh_name("x", avoid) == "x_2");
  CHECK(fresh_name("y", avoid) == "y");
  avoid.insert("y");
  CHECK(fresh_name("y", avoid) == "y_2");
}

TEST_CASE("printing matches the concrete syntax") {
  CHECK(to_string(num(2)) == "s(s(z))");
  TermPtr f = Term::var("F", kNat2Nat);
  TermPtr app2 =
      Term::app(Term::app(Term::var("G", Type::arrow(kNat, kNat2Nat)), z()),
                z());
  CHECK(to_string(Term::app(f, z())) == "(F z)");
  CHECK(to_string(app2) == "(G z z)");  // spine flattened
  TermPtr lam = Term::abs("n", kNat, s(Term::var("n", kNat)));
  CHECK(to_string(lam) == "\\n:nat. s(n)");
  CHECK(to_string(Term::fun("nil", {}, Type::ind("listnat"), {})) == "nil");
}

TEST_CASE("position_to_string") {
  CHECK(position_to_string({}) == position_to_string({}));
  CHECK(position_to_string({1, 2}) != position_to_string({2, 1}));
  CHECK(position_to_string({1}) != position_to_string({}));
}
