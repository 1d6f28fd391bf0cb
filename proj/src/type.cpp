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

#include "idts/type.hpp"

#include <cassert>

#include "idts/errors.hpp"

namespace idts {

struct Type::Node {
  bool arrow = false;
  std::string name;  // inductive leaf
  std::shared_ptr<const Node> dom, cod;
};

Type Type::ind(std::string name) {
  auto n = std::make_shared<Node>();
  n->arrow = false;
  n->name = std::move(name);
  return Type(std::move(n));
}

Type Type::arrow(Type domain, Type codomain) {
  assert(!domain.is_null() && !codomain.is_null());
  auto n = std::make_shared<Node>();
  n->arrow = true;
  n->dom = domain.n_;
  n->cod = codomain.n_;
  return Type(std::move(n));
}

bool Type::is_ind() const { return n_ && !n_->arrow; }
bool Type::is_arrow() const { return n_ && n_->arrow; }

const std::string& Type::ind_name() const {
  assert(is_ind());
  return n_->name;
}

Type Type::domain() const {
  assert(is_arrow());
  return Type(n_->dom);
}

Type Type::codomain() const {
  assert(is_arrow());
  return Type(n_->cod);
}

std::optional<std::pair<std::vector<Type>, Type>> Type::split(int n) const {
  std::vector<Type> args;
  Type rest = *this;
  for (int i = 0; i < n; ++i) {
    if (!rest.is_arrow()) return std::nullopt;
    args.push_back(rest.domain());
    rest = rest.codomain();
  }
  return std::make_pair(std::move(args), rest);
}

std::pair<std::vector<Type>, Type> Type::peel() const {
  std::vector<Type> args;
  Type rest = *this;
  while (rest.is_arrow()) {
    args.push_back(rest.domain());
    rest = rest.codomain();
  }
  return {std::move(args), rest};
}

bool operator==(const Type& a, const Type& b) {
  if (a.n_ == b.n_) return true;
  if (!a.n_ || !b.n_) return false;
  if (a.n_->arrow != b.n_->arrow) return false;
  if (!a.n_->arrow) return a.n_->name == b.n_->name;
  return a.domain() == b.domain() && a.codomain() == b.codomain();
}

namespace {

void collect_leaves(const Type& s, TypePos& here, bool positive,
                    std::set<TypePos>& pos, std::set<TypePos>& neg) {
  if (s.is_ind()) {
    (positive ? pos : neg).insert(here);
    return;
  }
  here.push_back(1);
  collect_leaves(s.domain(), here, !positive, pos, neg);
  here.back() = 2;
  collect_leaves(s.codomain(), here, positive, pos, neg);
  here.pop_back();
}

}  // namespace

std::set<TypePos> positive_positions(const Type& s) {
  std::set<TypePos> pos, neg;
  TypePos here;
  collect_leaves(s, here, true, pos, neg);
  return pos;
}

std::set<TypePos> negative_positions(const Type& s) {
  std::set<TypePos> pos, neg;
  TypePos here;
  collect_leaves(s, here, true, pos, neg);
  return neg;
}

std::optional<Type> type_at(const Type& s, const TypePos& p) {
  Type cur = s;
  for (int step : p) {
    if (!cur.is_arrow()) return std::nullopt;
    if (step == 1) {
      cur = cur.domain();
    } else if (step == 2) {
      cur = cur.codomain();
    } else {
      return std::nullopt;
    }
  }
  return cur;
}

bool occurs(const std::string& ind, const Type& s) {
  if (s.is_ind()) return s.ind_name() == ind;
  return occurs(ind, s.domain()) || occurs(ind, s.codomain());
}

bool occurs_positively(const std::string& ind, const Type& s) {
  if (!occurs(ind, s)) return false;
  for (const TypePos& p : negative_positions(s)) {
    auto at = type_at(s, p);
    if (at && at->is_ind() && at->ind_name() == ind) return false;
  }
  return true;
}

bool occurs_strictly_positively(const std::string& ind, const Type& s) {
  auto [args, base] = s.peel();
  if (!base.is_ind() || base.ind_name() != ind) return false;
  for (const Type& a : args) {
    if (occurs(ind, a)) return false;
  }
  return true;
}

std::string to_string(const Type& s) {
  if (s.is_null()) return "<null>";
  if (s.is_ind()) return s.ind_name();
  std::string dom = to_string(s.domain());
  if (s.domain().is_arrow()) dom = "(" + dom + ")";
  return dom + " -> " + to_string(s.codomain());
}

std::string type_mangle(const Type& s) {
  if (s.is_ind()) return s.ind_name();
  std::string dom = type_mangle(s.domain());
  if (s.domain().is_arrow()) dom = "L" + dom + "R";
  return dom + "_to_" + type_mangle(s.codomain());
}

}  // namespace idts
