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

#include "idts/term.hpp"

#include <cassert>
#include <sstream>

#include "idts/errors.hpp"

namespace idts {

const Type& Term::binder_type() const {
  assert(kind_ == Kind::Abs);
  return binder_type_;
}

const TermPtr& Term::body() const {
  assert(kind_ == Kind::Abs);
  return kids_[0];
}

const TermPtr& Term::fn() const {
  assert(kind_ == Kind::App);
  return kids_[0];
}

const TermPtr& Term::arg() const {
  assert(kind_ == Kind::App);
  return kids_[1];
}

const std::vector<TermPtr>& Term::args() const {
  assert(kind_ == Kind::Fun);
  return kids_;
}

TermPtr Term::var(std::string name, Type t) {
  if (t.is_null()) throw TypeError("variable '" + name + "' has no type");
  auto n = std::shared_ptr<Term>(new Term());
  n->kind_ = Kind::Var;
  n->name_ = std::move(name);
  n->type_ = std::move(t);
  return n;
}

TermPtr Term::abs(std::string binder, Type binder_type, TermPtr body) {
  assert(body);
  auto n = std::shared_ptr<Term>(new Term());
  n->kind_ = Kind::Abs;
  n->name_ = std::move(binder);
  n->binder_type_ = binder_type;
  n->type_ = Type::arrow(std::move(binder_type), body->type());
  n->nodes_ = 1 + body->node_count();
  n->kids_.push_back(std::move(body));
  return n;
}

TermPtr Term::app(TermPtr f, TermPtr a) {
  assert(f && a);
  if (!f->type().is_arrow()) {
    throw TypeError("application of non-functional term: " + to_string(f) +
                    " : " + to_string(f->type()));
  }
  if (f->type().domain() != a->type()) {
    throw TypeError("argument type mismatch: expected " +
                    to_string(f->type().domain()) + ", got " +
                    to_string(a->type()));
  }
  auto n = std::shared_ptr<Term>(new Term());
  n->kind_ = Kind::App;
  n->type_ = f->type().codomain();
  n->nodes_ = 1 + f->node_count() + a->node_count();
  n->kids_ = {std::move(f), std::move(a)};
  return n;
}

TermPtr Term::fun(std::string symbol, const std::vector<Type>& arg_types,
                  Type result, std::vector<TermPtr> args) {
  if (arg_types.size() != args.size()) {
    throw TypeError("symbol '" + symbol + "' applied to " +
                    std::to_string(args.size()) + " arguments, declared " +
                    std::to_string(arg_types.size()));
  }
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i]->type() != arg_types[i]) {
      throw TypeError("argument " + std::to_string(i + 1) + " of '" + symbol +
                      "': expected " + to_string(arg_types[i]) + ", got " +
                      to_string(args[i]->type()));
    }
  }
  return fun_raw(std::move(symbol), std::move(result), std::move(args));
}

TermPtr Term::fun_raw(std::string symbol, Type result,
                      std::vector<TermPtr> args) {
  auto n = std::shared_ptr<Term>(new Term());
  n->kind_ = Kind::Fun;
  n->name_ = std::move(symbol);
  n->type_ = std::move(result);
  for (const auto& a : args) n->nodes_ += a->node_count();
  n->kids_ = std::move(args);
  return n;
}

namespace {

bool alpha_rec(const TermPtr& a, const TermPtr& b,
               std::map<std::string, std::string>& ab,
               std::map<std::string, std::string>& ba) {
  if (a->kind() != b->kind()) return false;
  if (a->type() != b->type()) return false;
  switch (a->kind()) {
    case Term::Kind::Var: {
      auto ia = ab.find(a->name());
      auto ib = ba.find(b->name());
      if (ia != ab.end() || ib != ba.end()) {
        // Bound on at least one side: must be the same binder pair.
        return ia != ab.end() && ib != ba.end() && ia->second == b->name() &&
               ib->second == a->name();
      }
      return a->name() == b->name();
    }
    case Term::Kind::Abs: {
      if (a->binder_type() != b->binder_type()) return false;
      auto olda = ab.find(a->name()) != ab.end()
                      ? std::optional<std::string>(ab[a->name()])
                      : std::nullopt;
      auto oldb = ba.find(b->name()) != ba.end()
                      ? std::optional<std::string>(ba[b->name()])
                      : std::nullopt;
      ab[a->name()] = b->name();
      ba[b->name()] = a->name();
      bool ok = alpha_rec(a->body(), b->body(), ab, ba);
      if (olda) ab[a->name()] = *olda; else ab.erase(a->name());
      if (oldb) ba[b->name()] = *oldb; else ba.erase(b->name());
      return ok;
    }
    case Term::Kind::App:
      return alpha_rec(a->fn(), b->fn(), ab, ba) &&
             alpha_rec(a->arg(), b->arg(), ab, ba);
    case Term::Kind::Fun: {
      if (a->name() != b->name()) return false;
      if (a->args().size() != b->args().size()) return false;
      for (size_t i = 0; i < a->args().size(); ++i) {
        if (!alpha_rec(a->args()[i], b->args()[i], ab, ba)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->node_count() != b->node_count()) return false;
  std::map<std::string, std::string> ab, ba;
  return alpha_rec(a, b, ab, ba);
}

namespace {

void free_vars_rec(const TermPtr& t, std::map<std::string, int>& bound,
                   std::set<std::string>& out) {
  switch (t->kind()) {
    case Term::Kind::Var:
      if (bound[t->name()] == 0) out.insert(t->name());
      return;
    case Term::Kind::Abs:
      ++bound[t->name()];
      free_vars_rec(t->body(), bound, out);
      --bound[t->name()];
      return;
    case Term::Kind::App:
      free_vars_rec(t->fn(), bound, out);
      free_vars_rec(t->arg(), bound, out);
      return;
    case Term::Kind::Fun:
      for (const auto& a : t->args()) free_vars_rec(a, bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  std::map<std::string, int> bound;
  free_vars_rec(t, bound, out);
  return out;
}

bool has_free_var(const TermPtr& t, const std::string& name) {
  return free_vars(t).count(name) > 0;
}

namespace {

void free_vars_typed_rec(const TermPtr& t, std::map<std::string, int>& bound,
                         std::map<std::string, Type>& out) {
  switch (t->kind()) {
    case Term::Kind::Var:
      if (bound[t->name()] == 0) out.emplace(t->name(), t->type());
      return;
    case Term::Kind::Abs:
      ++bound[t->name()];
      free_vars_typed_rec(t->body(), bound, out);
      --bound[t->name()];
      return;
    case Term::Kind::App:
      free_vars_typed_rec(t->fn(), bound, out);
      free_vars_typed_rec(t->arg(), bound, out);
      return;
    case Term::Kind::Fun:
      for (const auto& a : t->args()) free_vars_typed_rec(a, bound, out);
      return;
  }
}

}  // namespace

std::map<std::string, Type> free_vars_typed(const TermPtr& t) {
  std::map<std::string, Type> out;
  std::map<std::string, int> bound;
  free_vars_typed_rec(t, bound, out);
  return out;
}

namespace {

void key_rec(const TermPtr& t, std::vector<std::string>& binders,
             std::string& out) {
  switch (t->kind()) {
    case Term::Kind::Var: {
      for (size_t i = binders.size(); i-- > 0;) {
        if (binders[i] == t->name()) {
          out += "b";
          out += std::to_string(binders.size() - 1 - i);
          return;
        }
      }
      out += "v!";
      out += t->name();
      out += ":";
      out += to_string(t->type());
      return;
    }
    case Term::Kind::Abs:
      out += "L[";
      out += to_string(t->binder_type());
      out += "]";
      binders.push_back(t->name());
      key_rec(t->body(), binders, out);
      binders.pop_back();
      return;
    case Term::Kind::App:
      out += "A(";
      key_rec(t->fn(), binders, out);
      out += " ";
      key_rec(t->arg(), binders, out);
      out += ")";
      return;
    case Term::Kind::Fun:
      out += "F!";
      out += t->name();
      out += "(";
      for (size_t i = 0; i < t->args().size(); ++i) {
        if (i) out += ",";
        key_rec(t->args()[i], binders, out);
      }
      out += ")";
      return;
  }
}

}  // namespace

std::string canonical_key(const TermPtr& t) {
  std::string out;
  out.reserve(t->node_count() * 8);
  std::vector<std::string> binders;
  key_rec(t, binders, out);
  return out;
}

namespace {

void positions_rec(const TermPtr& t, TermPos& here,
                   std::vector<TermPos>& out) {
  out.push_back(here);
  int n = 0;
  switch (t->kind()) {
    case Term::Kind::Var: return;
    case Term::Kind::Abs: n = 1; break;
    case Term::Kind::App: n = 2; break;
    case Term::Kind::Fun: n = static_cast<int>(t->args().size()); break;
  }
  for (int i = 1; i <= n; ++i) {
    here.push_back(i);
    const TermPtr& kid = t->kind() == Term::Kind::Abs ? t->body()
                         : t->kind() == Term::Kind::App
                             ? (i == 1 ? t->fn() : t->arg())
                             : t->args()[i - 1];
    positions_rec(kid, here, out);
    here.pop_back();
  }
}

const TermPtr& child_at(const TermPtr& t, int i) {
  switch (t->kind()) {
    case Term::Kind::Abs:
      if (i == 1) return t->body();
      break;
    case Term::Kind::App:
      if (i == 1) return t->fn();
      if (i == 2) return t->arg();
      break;
    case Term::Kind::Fun:
      if (i >= 1 && i <= static_cast<int>(t->args().size()))
        return t->args()[i - 1];
      break;
    default:
      break;
  }
  throw PositionError("no child " + std::to_string(i) + " in " + to_string(t));
}

}  // namespace

std::vector<TermPos> all_positions(const TermPtr& t) {
  std::vector<TermPos> out;
  TermPos here;
  positions_rec(t, here, out);
  return out;
}

TermPtr subterm_at(const TermPtr& t, const TermPos& p) {
  TermPtr cur = t;
  for (int i : p) cur = child_at(cur, i);
  return cur;
}

TermPtr replace_at(const TermPtr& t, const TermPos& p, const TermPtr& repl) {
  if (p.empty()) {
    if (repl->type() != t->type()) {
      throw TypeError("replacement changes type at " + position_to_string(p) +
                      ": " + to_string(t->type()) + " vs " +
                      to_string(repl->type()));
    }
    return repl;
  }
  TermPos rest(p.begin() + 1, p.end());
  int i = p[0];
  const TermPtr& kid = child_at(t, i);
  TermPtr newkid = replace_at(kid, rest, repl);
  switch (t->kind()) {
    case Term::Kind::Abs:
      return Term::abs(t->name(), t->binder_type(), newkid);
    case Term::Kind::App:
      return i == 1 ? Term::app(newkid, t->arg()) : Term::app(t->fn(), newkid);
    case Term::Kind::Fun: {
      std::vector<TermPtr> args = t->args();
      if (newkid->type() != args[i - 1]->type()) {
        throw TypeError("replacement changes argument type of '" + t->name() +
                        "'");
      }
      args[i - 1] = newkid;
      return Term::fun_raw(t->name(), t->type(), std::move(args));
    }
    default:
      throw PositionError("invalid position " + position_to_string(p));
  }
}

std::string position_to_string(const TermPos& p) {
  if (p.empty()) return "e";
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += ".";
    out += std::to_string(p[i]);
  }
  return out;
}

void Substitution::bind(const std::string& var, TermPtr image) {
  if (image->kind() == Term::Kind::Var && image->name() == var) return;
  map_[var] = std::move(image);
}

const TermPtr* Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int k = 1;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

namespace {

TermPtr subst_rec(const TermPtr& t,
                  const std::map<std::string, TermPtr>& theta) {
  switch (t->kind()) {
    case Term::Kind::Var: {
      auto it = theta.find(t->name());
      if (it == theta.end()) return t;
      if (it->second->type() != t->type()) {
        throw TypeError("substitution image for '" + t->name() +
                        "' has type " + to_string(it->second->type()) +
                        ", variable has type " + to_string(t->type()));
      }
      return it->second;
    }
    case Term::Kind::Abs: {
      std::map<std::string, TermPtr> inner = theta;
      inner.erase(t->name());
      // Keep only bindings for variables actually free in the body.
      std::set<std::string> bodyfv = free_vars(t->body());
      for (auto it = inner.begin(); it != inner.end();) {
        it = bodyfv.count(it->first) ? std::next(it) : inner.erase(it);
      }
      if (inner.empty()) return t;
      std::set<std::string> imagefv;
      for (const auto& [v, img] : inner) {
        auto fv = free_vars(img);
        imagefv.insert(fv.begin(), fv.end());
      }
      std::string binder = t->name();
      TermPtr body = t->body();
      if (imagefv.count(binder)) {
        std::set<std::string> avoid = imagefv;
        avoid.insert(bodyfv.begin(), bodyfv.end());
        for (const auto& [v, img] : inner) avoid.insert(v);
        binder = fresh_name(binder, avoid);
        std::map<std::string, TermPtr> rename;
        rename[t->name()] = Term::var(binder, t->binder_type());
        body = subst_rec(body, rename);
      }
      return Term::abs(binder, t->binder_type(), subst_rec(body, inner));
    }
    case Term::Kind::App:
      return Term::app(subst_rec(t->fn(), theta), subst_rec(t->arg(), theta));
    case Term::Kind::Fun: {
      std::vector<TermPtr> args;
      args.reserve(t->args().size());
      for (const auto& a : t->args()) args.push_back(subst_rec(a, theta));
      return Term::fun_raw(t->name(), t->type(), std::move(args));
    }
  }
  return t;
}

}  // namespace

TermPtr substitute(const TermPtr& t, const Substitution& theta) {
  if (theta.empty()) return t;
  return subst_rec(t, theta.entries());
}

namespace {

// Surface syntax: atoms are identifiers, f(args), (t1 t2 ...), \x:T. atom.
void print_rec(const TermPtr& t, std::string& out) {
  switch (t->kind()) {
    case Term::Kind::Var:
      out += t->name();
      return;
    case Term::Kind::Abs:
      out += "\\";
      out += t->name();
      out += ":";
      out += to_string(t->binder_type());
      out += ". ";
      print_rec(t->body(), out);
      return;
    case Term::Kind::App: {
      // Flatten the application spine.
      std::vector<TermPtr> spine;
      TermPtr head = t;
      while (head->kind() == Term::Kind::App) {
        spine.push_back(head->arg());
        head = head->fn();
      }
      out += "(";
      print_rec(head, out);
      for (size_t i = spine.size(); i-- > 0;) {
        out += " ";
        print_rec(spine[i], out);
      }
      out += ")";
      return;
    }
    case Term::Kind::Fun:
      out += t->name();
      if (!t->args().empty()) {
        out += "(";
        for (size_t i = 0; i < t->args().size(); ++i) {
          if (i) out += ", ";
          print_rec(t->args()[i], out);
        }
        out += ")";
      }
      return;
  }
}

}  // namespace

std::string to_string(const TermPtr& t) {
  std::string out;
  print_rec(t, out);
  return out;
}

}  // namespace idts
