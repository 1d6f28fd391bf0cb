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

#include "idts/erasure.hpp"

#include <deque>
#include <set>

#include "idts/errors.hpp"

namespace idts {

bool s_positive(const Signature& sig, const TermPtr& u, const std::string& s) {
  if (!sig.has_inductive(s)) {
    throw ValidationError("unknown inductive type " + s);
  }
  return occurs_positively(s, u->type());
}

namespace {

void collect_positive(const Signature& sig, const TermPtr& u,
                      const std::string& s, TermPos& here,
                      std::vector<std::pair<TermPos, TermPtr>>& out) {
  if (!s_positive(sig, u, s)) return;  // blocks the whole subtree below
  out.emplace_back(here, u);
  switch (u->kind()) {
    case Term::Kind::Var:
      return;
    case Term::Kind::Abs:
      here.push_back(1);
      collect_positive(sig, u->body(), s, here, out);
      here.pop_back();
      return;
    case Term::Kind::App:
      here.push_back(1);
      collect_positive(sig, u->fn(), s, here, out);
      here.back() = 2;
      collect_positive(sig, u->arg(), s, here, out);
      here.pop_back();
      return;
    case Term::Kind::Fun:
      for (size_t i = 0; i < u->args().size(); ++i) {
        here.push_back(static_cast<int>(i + 1));
        collect_positive(sig, u->args()[i], s, here, out);
        here.pop_back();
      }
      return;
  }
}

}  // namespace

std::vector<std::pair<TermPos, TermPtr>> s_positive_subterms(
    const Signature& sig, const TermPtr& u, const std::string& s) {
  std::vector<std::pair<TermPos, TermPtr>> out;
  TermPos here;
  collect_positive(sig, u, s, here, out);
  return out;
}

TermPtr ErasureContext::bottom(const Type& t) {
  std::string name = "_bot_" + type_mangle(t);
  used_.emplace(name, t);
  return Term::fun(name, {}, t, {});
}

TermPtr ErasureContext::erase(const TermPtr& u) {
  if (!s_positive(sig_, u, s_)) return bottom(u->type());
  switch (u->kind()) {
    case Term::Kind::Var:
      return u;
    case Term::Kind::Abs:
      return Term::abs(u->name(), u->binder_type(), erase(u->body()));
    case Term::Kind::App:
      return Term::app(erase(u->fn()), erase(u->arg()));
    case Term::Kind::Fun: {
      std::vector<TermPtr> args;
      args.reserve(u->args().size());
      for (const auto& a : u->args()) args.push_back(erase(a));
      return Term::fun_raw(u->name(), u->type(), std::move(args));
    }
  }
  return u;
}

namespace {

std::set<std::string> positive_position_keys(const Signature& sig,
                                             const TermPtr& u,
                                             const std::string& s) {
  std::set<std::string> keys;
  for (const auto& [pos, sub] : s_positive_subterms(sig, u, s)) {
    keys.insert(position_to_string(pos));
  }
  return keys;
}

}  // namespace

std::vector<TermPtr> s_reducts(const RuleSystem& rs, const TermPtr& u,
                               const std::string& s, long fuel) {
  std::vector<TermPtr> out;
  std::set<std::string> seen;
  std::deque<TermPtr> work;
  out.push_back(u);
  seen.insert(canonical_key(u));
  work.push_back(u);
  while (!work.empty()) {
    TermPtr cur = work.front();
    work.pop_front();
    auto positive = positive_position_keys(rs.sig(), cur, s);
    for (const auto& cand : rewrite_candidates(rs, cur).candidates) {
      if (!positive.count(position_to_string(cand.pos))) continue;
      if (!seen.insert(canonical_key(cand.result)).second) continue;
      if (static_cast<long>(out.size()) >= fuel) {
        throw FuelExhausted("reduct set exceeded " + std::to_string(fuel) +
                            " elements");
      }
      out.push_back(cand.result);
      work.push_back(cand.result);
    }
  }
  return out;
}

std::vector<RewriteCandidate> co_s_step(const RuleSystem& rs, const TermPtr& u,
                                        const std::string& s) {
  std::vector<RewriteCandidate> out;
  auto positive = positive_position_keys(rs.sig(), u, s);
  for (const auto& cand : rewrite_candidates(rs, u).candidates) {
    if (!positive.count(position_to_string(cand.pos))) out.push_back(cand);
  }
  return out;
}

}  // namespace idts
