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
#include "idts/type.hpp"

using namespace idts;

namespace {

Type nat() { return Type::ind("nat"); }
Type ord() { return Type::ind("ord"); }

}  // namespace

TEST_CASE("construction and structural equality") {
  Type a = nat();
  CHECK(a.is_ind());
  CHECK_FALSE(a.is_arrow());
  CHECK(a.ind_name() == "nat");

  Type f = Type::arrow(nat(), ord());
  CHECK(f.is_arrow());
  CHECK(f.domain() == nat());
  CHECK(f.codomain() == ord());

  CHECK(nat() == nat());
  CHECK(nat() != ord());
  CHECK(Type::arrow(nat(), ord()) == Type::arrow(nat(), ord()));
  CHECK(Type::arrow(nat(), ord()) != Type::arrow(ord(), nat()));
  // Right-nested vs left-nested arrows are distinct types.
  CHECK(Type::arrow(Type::arrow(nat(), nat()), nat()) !=
        Type::arrow(nat(), Type::arrow(nat(), nat())));

  Type null_ty;
  CHECK(null_ty.is_null());
  CHECK_FALSE(nat().is_null());
}

TEST_CASE("printing uses right-associative arrows") {
  CHECK(to_string(nat()) == "nat");
  CHECK(to_string(Type::arrow(nat(), ord())) == "nat -> ord");
  // Codomain nesting needs no parentheses.
  CHECK(to_string(Type::arrow(nat(), Type::arrow(nat(), nat()))) ==
        "nat -> nat -> nat");
  // Domain nesting does.
  CHECK(to_string(Type::arrow(Type::arrow(nat(), ord()), ord())) ==
        "(nat -> ord) -> ord");
  CHECK(to_string(Type::arrow(Type::arrow(nat(), nat()),
                              Type::arrow(nat(), nat()))) ==
        "(nat -> nat) -> nat -> nat");
}

TEST_CASE("split and peel") {
  Type f = Type::arrow(nat(), Type::arrow(ord(), nat()));  // nat -> ord -> nat

  auto s0 = f.split(0);
  REQUIRE(s0.has_value());
  CHECK(s0->first.empty());
  CHECK(s0->second == f);

  auto s1 = f.split(1);
  REQUIRE(s1.has_value());
  CHECK(s1->first == std::vector<Type>{nat()});
  CHECK(s1->second == Type::arrow(ord(), nat()));

  auto s2 = f.split(2);
  REQUIRE(s2.has_value());
  CHECK(s2->first == std::vector<Type>{nat(), ord()});
  CHECK(s2->second == nat());

  CHECK_FALSE(f.split(3).has_value());
  CHECK_FALSE(nat().split(1).has_value());

  auto [args, base] = f.peel();
  CHECK(args == std::vector<Type>{nat(), ord()});
  CHECK(base == nat());

  auto [args0, base0] = nat().peel();
  CHECK(args0.empty());
  CHECK(base0 == nat());

  // peel stops at the base even when the domain is itself an arrow.
  Type g = Type::arrow(Type::arrow(nat(), ord()), ord());
  auto [gargs, gbase] = g.peel();
  REQUIRE(gargs.size() == 1);
  CHECK(gargs[0] == Type::arrow(nat(), ord()));
  CHECK(gbase == ord());
}

TEST_CASE("leaf polarity by domain-step parity") {
  // (a -> b) -> c: a sits under two domain steps, b under one, c under none.
  Type t = Type::arrow(Type::arrow(Type::ind("a"), Type::ind("b")),
                       Type::ind("c"));
  std::set<TypePos> pos = positive_positions(t);
  std::set<TypePos> neg = negative_positions(t);
  CHECK(pos == std::set<TypePos>{{1, 1}, {2}});
  CHECK(neg == std::set<TypePos>{{1, 2}});

  // A bare inductive type is its own (positive) leaf.
  CHECK(positive_positions(nat()) == std::set<TypePos>{{}});
  CHECK(negative_positions(nat()).empty());

  // nat -> ord: nat is the negative leaf, ord the positive one.
  Type h = Type::arrow(nat(), ord());
  CHECK(positive_positions(h) == std::set<TypePos>{{2}});
  CHECK(negative_positions(h) == std::set<TypePos>{{1}});
}

TEST_CASE("type_at walks domain and codomain") {
  Type t = Type::arrow(Type::arrow(nat(), ord()), ord());
  auto at_root = type_at(t, {});
  REQUIRE(at_root.has_value());
  CHECK(*at_root == t);
  auto at_dom = type_at(t, {1});
  REQUIRE(at_dom.has_value());
  CHECK(*at_dom == Type::arrow(nat(), ord()));
  auto deep = type_at(t, {1, 2});
  REQUIRE(deep.has_value());
  CHECK(*deep == ord());
  CHECK_FALSE(type_at(t, {2, 1}).has_value());  // codomain is a leaf
  CHECK_FALSE(type_at(t, {3}).has_value());
}

TEST_CASE("occurrence predicates") {
  Type lim_arg = Type::arrow(nat(), ord());        // nat -> ord
  Type bad_arg = Type::arrow(ord(), ord());        // ord -> ord
  Type nested = Type::arrow(lim_arg, ord());       // (nat -> ord) -> ord

  CHECK(occurs("ord", lim_arg));
  CHECK(occurs("nat", lim_arg));
  CHECK_FALSE(occurs("bool", lim_arg));

  // ord at the codomain leaf only: positive, and strictly positive.
  CHECK(occurs_positively("ord", lim_arg));
  CHECK(occurs_strictly_positively("ord", lim_arg));

  // nat at a domain leaf: occurs, but negatively.
  CHECK_FALSE(occurs_positively("nat", lim_arg));
  CHECK_FALSE(occurs_strictly_positively("nat", lim_arg));

  // ord -> ord: the domain occurrence ruins both grades.
  CHECK(occurs("ord", bad_arg));
  CHECK_FALSE(occurs_positively("ord", bad_arg));
  CHECK_FALSE(occurs_strictly_positively("ord", bad_arg));

  // (nat -> ord) -> ord: the occurrence of ord inside the domain of the
  // outer arrow flips to negative, so neither grade holds.
  CHECK(occurs("ord", nested));
  CHECK_FALSE(occurs_positively("ord", nested));
  CHECK_FALSE(occurs_strictly_positively("ord", nested));

  // Both predicates demand an actual occurrence.
  CHECK_FALSE(occurs_positively("ord", nat()));
  CHECK_FALSE(occurs_strictly_positively("ord", nat()));
  CHECK(occurs_strictly_positively("nat", nat()));
}

TEST_CASE("mangled spellings are identifier-safe and injective") {
  CHECK(type_mangle(nat()) == "nat");
  CHECK(type_mangle(Type::arrow(nat(), ord())) == "nat_to_ord");

  // The mangle must separate the associativity cases the arrow syntax
  // distinguishes.
  std::vector<Type> distinct = {
      nat(),
      ord(),
      Type::arrow(nat(), nat()),
      Type::arrow(nat(), Type::arrow(nat(), nat())),
      Type::arrow(Type::arrow(nat(), nat()), nat()),
      Type::arrow(Type::arrow(nat(), ord()), ord()),
      Type::arrow(nat(), Type::arrow(ord(), ord())),
  };
  std::set<std::string> seen;
  for (const auto& t : distinct) {
    std::string m = type_mangle(t);
    CHECK(m.find(' ') == std::string::npos);
    CHECK(m.find('-') == std::string::npos);
    CHECK(m.find('(') == std::string::npos);
    seen.insert(m);
  }
  CHECK(seen.size() == distinct.size());
}
