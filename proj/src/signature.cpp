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

#include "idts/signature.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>

#include "idts/errors.hpp"

namespace idts {

int Status::arity() const {
  int m = 0;
  for (const auto& g : groups)
    for (int i : g) m = std::max(m, i);
  return m;
}

Status Status::default_for(int n_args) {
  Status st;
  for (int i = 1; i <= n_args; ++i) st.groups.push_back({i});
  return st;
}

std::string to_string(const Status& s) {
  std::string out = "lex(";
  for (size_t g = 0; g < s.groups.size(); ++g) {
    if (g) out += ", ";
    out += "mul";
    for (int i : s.groups[g]) out += " " + std::to_string(i);
  }
  return out + ")";
}

bool DependencyOrder::geq(const std::string& s, const std::string& t) const {
  auto is = class_of.find(s), it = class_of.find(t);
  if (is == class_of.end() || it == class_of.end()) return false;
  return reach[is->second][it->second];
}

bool DependencyOrder::equiv(const std::string& s, const std::string& t) const {
  auto is = class_of.find(s), it = class_of.find(t);
  if (is == class_of.end() || it == class_of.end()) return false;
  return is->second == it->second;
}

bool DependencyOrder::greater(const std::string& s,
                              const std::string& t) const {
  return geq(s, t) && !equiv(s, t);
}

void check_status(const Status& st, const FunctionDecl& fd) {
  if (st.groups.empty()) throw StatusError("status of '" + fd.name + "' is empty");
  std::set<int> seen;
  for (const auto& g : st.groups) {
    if (g.empty()) throw StatusError("empty multiset group in status of '" + fd.name + "'");
    for (int i : g) {
      if (i < 1 || i > fd.arity) {
        throw StatusError("status of '" + fd.name + "' uses argument " +
                          std::to_string(i) + ", arity is " +
                          std::to_string(fd.arity));
      }
      if (!seen.insert(i).second) {
        throw StatusError("status of '" + fd.name + "' mentions argument " +
                          std::to_string(i) + " twice");
      }
    }
    for (size_t k = 1; k < g.size(); ++k) {
      if (fd.arg_types[g[k] - 1] != fd.arg_types[g[0] - 1]) {
        throw StatusError("multiset group in status of '" + fd.name +
                          "' mixes argument types " +
                          to_string(fd.arg_types[g[0] - 1]) + " and " +
                          to_string(fd.arg_types[g[k] - 1]));
      }
    }
  }
}

void Signature::mutable_guard() const {
  if (sealed_) throw ValidationError("signature is sealed");
}

void Signature::declare_inductive(const std::string& name) {
  mutable_guard();
  if (ctors_by_ind_.count(name) || symbols_.count(name)) {
    throw ValidationError("duplicate declaration of '" + name + "'");
  }
  inductive_order_.push_back(name);
  ctors_by_ind_[name] = {};
}

void Signature::declare_constructor(const std::string& inductive,
                                    const std::string& name,
                                    const std::vector<Type>& arg_types) {
  mutable_guard();
  auto it = ctors_by_ind_.find(inductive);
  if (it == ctors_by_ind_.end()) {
    throw ValidationError("constructor '" + name +
                          "' declared for unknown type '" + inductive + "'");
  }
  if (symbols_.count(name) || ctors_by_ind_.count(name)) {
    throw ValidationError("duplicate declaration of '" + name + "'");
  }
  FunctionDecl fd;
  fd.name = name;
  fd.arity = static_cast<int>(arg_types.size());
  fd.arg_types = arg_types;
  fd.result = Type::ind(inductive);
  Type full = fd.result;
  for (size_t i = arg_types.size(); i-- > 0;) full = Type::arrow(arg_types[i], full);
  fd.type = full;
  fd.status = Status::default_for(fd.arity);
  fd.is_constructor = true;
  fd.inductive = inductive;
  symbols_[name] = std::move(fd);
  symbol_order_.push_back(name);
  it->second.push_back(name);
}

void Signature::declare_symbol(const std::string& name, Type type, int arity,
                               std::optional<Status> status) {
  mutable_guard();
  if (symbols_.count(name) || ctors_by_ind_.count(name)) {
    throw ValidationError("duplicate declaration of '" + name + "'");
  }
  auto split = type.split(arity);
  if (!split) {
    throw ValidationError("symbol '" + name + "' has arity " +
                          std::to_string(arity) + " but type " +
                          to_string(type) + " has fewer arrows");
  }
  FunctionDecl fd;
  fd.name = name;
  fd.type = std::move(type);
  fd.arity = arity;
  fd.arg_types = split->first;
  fd.result = split->second;
  fd.status = status ? *status : Status::default_for(arity);
  fd.is_constructor = false;
  if (arity > 0) check_status(fd.status, fd);
  symbols_[name] = std::move(fd);
  symbol_order_.push_back(name);
}

void Signature::add_precedence_greater(const std::string& a,
                                       const std::string& b) {
  mutable_guard();
  prec_greater_decl_.emplace_back(a, b);
}

void Signature::add_precedence_equiv(const std::string& a,
                                     const std::string& b) {
  mutable_guard();
  prec_equiv_decl_.emplace_back(a, b);
}

DependencyOrder Signature::compute_dependency() const {
  DependencyOrder dep;
  int n = static_cast<int>(inductive_order_.size());
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i) idx[inductive_order_[i]] = i;

  // edge[s][t]: t occurs in the type of a constructor of s. Reflexive.
  std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) edge[i][i] = true;
  for (int i = 0; i < n; ++i) {
    for (const std::string& c : ctors_by_ind_.at(inductive_order_[i])) {
      const FunctionDecl& fd = symbols_.at(c);
      for (int j = 0; j < n; ++j) {
        if (occurs(inductive_order_[j], fd.type)) edge[i][j] = true;
      }
    }
  }
  // Transitive closure.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (edge[i][k])
        for (int j = 0; j < n; ++j)
          if (edge[k][j]) edge[i][j] = true;

  // Classes are mutual-reachability groups, listed in declaration order.
  std::vector<int> cls(n, -1);
  int nc = 0;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = nc;
    dep.classes.push_back({inductive_order_[i]});
    for (int j = i + 1; j < n; ++j) {
      if (cls[j] < 0 && edge[i][j] && edge[j][i]) {
        cls[j] = nc;
        dep.classes.back().push_back(inductive_order_[j]);
      }
    }
    ++nc;
  }
  for (int i = 0; i < n; ++i) dep.class_of[inductive_order_[i]] = cls[i];
  dep.reach.assign(nc, std::vector<bool>(nc, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (edge[i][j]) dep.reach[cls[i]][cls[j]] = true;
  return dep;
}

PositivityInfo Signature::compute_positivity(const std::string& ind,
                                             const DependencyOrder& dep) const {
  PositivityInfo info;
  info.strictly_positive = true;
  info.basic = true;
  for (const std::string& cname : ctors_by_ind_.at(ind)) {
    const FunctionDecl& c = symbols_.at(cname);
    for (int j = 0; j < c.arity; ++j) {
      const Type& arg = c.arg_types[j];
      auto [inner, base] = arg.peel();
      if (!inner.empty()) info.basic = false;
      // The target of the argument must be below or equivalent to ind.
      if (!base.is_ind() || !dep.geq(ind, base.ind_name())) {
        info.strictly_positive = false;
        info.violations.push_back(
            {cname, j + 1,
             "argument target " + to_string(base) + " is not below " + ind,
             std::nullopt});
      }
      // ind itself must not occur left of the argument's own arrows.
      for (const Type& in : inner) {
        if (occurs(ind, in)) {
          info.strictly_positive = false;
          info.violations.push_back(
              {cname, j + 1,
               "recursive occurrence of " + ind +
                   " inside a premise of the argument type",
               std::nullopt});
          break;
        }
      }
      // No type equivalent to ind at a negative position of the argument.
      for (const TypePos& p : negative_positions(arg)) {
        auto at = type_at(arg, p);
        if (at && at->is_ind() && dep.equiv(ind, at->ind_name())) {
          info.strictly_positive = false;
          info.violations.push_back(
              {cname, j + 1,
               "type " + at->ind_name() + " equivalent to " + ind +
                   " occurs at a negative position of the argument type",
               p});
        }
      }
    }
  }
  if (!info.strictly_positive) info.basic = false;
  return info;
}

void Signature::compute_precedence(ValidationReport& report) const {
  // Union-find over declared equivalences.
  std::map<std::string, std::string> parent;
  for (const std::string& s : symbol_order_) parent[s] = s;
  std::function<std::string(const std::string&)> find =
      [&](const std::string& x) -> std::string {
    std::string r = x;
    while (parent[r] != r) r = parent[r];
    return r;
  };
  for (const auto& [a, b] : prec_equiv_decl_) {
    if (!symbols_.count(a) || !symbols_.count(b)) continue;  // reported later
    parent[find(a)] = find(b);
  }
  std::map<std::string, int> cid;
  int nc = 0;
  for (const std::string& s : symbol_order_) {
    std::string r = find(s);
    if (!cid.count(r)) cid[r] = nc++;
  }
  prec_class_.clear();
  for (const std::string& s : symbol_order_) prec_class_[s] = cid[find(s)];

  std::vector<std::vector<bool>> strict(nc, std::vector<bool>(nc, false));
  for (const auto& [a, b] : prec_greater_decl_) {
    if (!symbols_.count(a) || !symbols_.count(b)) continue;
    strict[prec_class_[a]][prec_class_[b]] = true;
  }
  for (int k = 0; k < nc; ++k)
    for (int i = 0; i < nc; ++i)
      if (strict[i][k])
        for (int j = 0; j < nc; ++j)
          if (strict[k][j]) strict[i][j] = true;
  for (int i = 0; i < nc; ++i) {
    if (strict[i][i]) {
      // Find a witness symbol for the message.
      std::string w;
      for (const auto& [s, c] : prec_class_)
        if (c == i) { w = s; break; }
      report.verdict_failures.push_back("precedence cycle through '" + w + "'");
    }
  }
  prec_reach_ = std::move(strict);
}

ValidationReport Signature::validate() const {
  ValidationReport report;
  for (const auto& [name, fd] : symbols_) {
    // Types must mention only declared inductives.
    auto [args, base] = fd.type.peel();
    std::vector<Type> leaves = args;
    leaves.push_back(base);
    std::vector<Type> stack = leaves;
    while (!stack.empty()) {
      Type t = stack.back();
      stack.pop_back();
      if (t.is_arrow()) {
        stack.push_back(t.domain());
        stack.push_back(t.codomain());
      } else if (!ctors_by_ind_.count(t.ind_name())) {
        report.errors.push_back("symbol '" + name + "' mentions undeclared type '" +
                                t.ind_name() + "'");
      }
    }
    if (fd.arity > 0) {
      try {
        check_status(fd.status, fd);
      } catch (const StatusError& e) {
        report.errors.push_back(e.what());
      }
    }
  }
  for (const auto& [a, b] : prec_greater_decl_) {
    if (!symbols_.count(a))
      report.errors.push_back("precedence mentions unknown symbol '" + a + "'");
    if (!symbols_.count(b))
      report.errors.push_back("precedence mentions unknown symbol '" + b + "'");
  }
  for (const auto& [a, b] : prec_equiv_decl_) {
    if (!symbols_.count(a))
      report.errors.push_back("precedence mentions unknown symbol '" + a + "'");
    if (!symbols_.count(b))
      report.errors.push_back("precedence mentions unknown symbol '" + b + "'");
  }

  compute_precedence(report);

  // Equal statuses within a precedence class.
  std::map<int, std::string> rep;
  for (const std::string& s : symbol_order_) {
    int c = prec_class_[s];
    auto it = rep.find(c);
    if (it == rep.end()) {
      rep[c] = s;
      continue;
    }
    const FunctionDecl& f = symbols_.at(it->second);
    const FunctionDecl& g = symbols_.at(s);
    if (f.arity > 0 && g.arity > 0 && !(f.status == g.status)) {
      report.verdict_failures.push_back(
          "symbols '" + f.name + "' and '" + g.name +
          "' are equivalent in the precedence but have different statuses");
    }
  }

  // Strict positivity of every inductive type.
  DependencyOrder dep = compute_dependency();
  for (const std::string& ind : inductive_order_) {
    PositivityInfo info = compute_positivity(ind, dep);
    if (!info.strictly_positive) {
      std::string msg = "inductive type '" + ind + "' is not strictly positive";
      for (const auto& v : info.violations) {
        msg += "; " + v.constructor + " arg " + std::to_string(v.arg_index) +
               ": " + v.reason;
      }
      if (allow_non_strictly_positive_) {
        report.warnings.push_back(msg + " (accepted by option)");
      } else {
        report.verdict_failures.push_back(msg);
      }
    }
  }
  report.notes.push_back(
      "the dependency order on a finite signature is well-founded");
  return report;
}

void Signature::seal() {
  if (sealed_) return;
  ValidationReport report = validate();
  if (!report.ok()) {
    std::string msg = "signature validation failed";
    for (const auto& e : report.errors) msg += "\n  " + e;
    throw ValidationError(msg);
  }
  dep_ = compute_dependency();
  positivity_.clear();
  for (const std::string& ind : inductive_order_) {
    positivity_[ind] = compute_positivity(ind, dep_);
  }
  report_ = std::move(report);
  sealed_ = true;
}

const ValidationReport& Signature::validation() const {
  if (!sealed_) throw ValidationError("validation() requires a sealed signature");
  return report_;
}

Signature Signature::fork() const {
  Signature out;
  out.inductive_order_ = inductive_order_;
  out.ctors_by_ind_ = ctors_by_ind_;
  out.symbols_ = symbols_;
  out.symbol_order_ = symbol_order_;
  out.prec_greater_decl_ = prec_greater_decl_;
  out.prec_equiv_decl_ = prec_equiv_decl_;
  out.allow_constructor_rules_ = allow_constructor_rules_;
  out.allow_non_strictly_positive_ = allow_non_strictly_positive_;
  return out;
}

bool Signature::has_inductive(const std::string& name) const {
  return ctors_by_ind_.count(name) > 0;
}

bool Signature::has_symbol(const std::string& name) const {
  return symbols_.count(name) > 0;
}

const FunctionDecl& Signature::decl(const std::string& name) const {
  auto it = symbols_.find(name);
  if (it == symbols_.end()) {
    throw ValidationError("unknown symbol '" + name + "'");
  }
  return it->second;
}

bool Signature::is_constructor(const std::string& name) const {
  auto it = symbols_.find(name);
  return it != symbols_.end() && it->second.is_constructor;
}

const std::vector<std::string>& Signature::constructors_of(
    const std::string& ind) const {
  auto it = ctors_by_ind_.find(ind);
  if (it == ctors_by_ind_.end()) {
    throw ValidationError("unknown inductive type '" + ind + "'");
  }
  return it->second;
}

std::vector<std::string> Signature::symbols() const { return symbol_order_; }

const DependencyOrder& Signature::dependency() const {
  assert(sealed_);
  return dep_;
}

const PositivityInfo& Signature::positivity(const std::string& ind) const {
  assert(sealed_);
  auto it = positivity_.find(ind);
  if (it == positivity_.end()) {
    throw ValidationError("unknown inductive type '" + ind + "'");
  }
  return it->second;
}

bool Signature::is_sp_inductive(const Type& t) const {
  if (!t.is_ind()) return false;
  auto it = positivity_.find(t.ind_name());
  return it != positivity_.end() && it->second.strictly_positive;
}

bool Signature::is_basic_type(const Type& t) const {
  if (!t.is_ind()) return false;
  auto it = positivity_.find(t.ind_name());
  return it != positivity_.end() && it->second.basic;
}

bool Signature::prec_greater(const std::string& f, const std::string& g) const {
  auto fi = prec_class_.find(f), gi = prec_class_.find(g);
  if (fi == prec_class_.end() || gi == prec_class_.end()) return false;
  if (fi->second == gi->second) return false;
  return prec_reach_[fi->second][gi->second];
}

bool Signature::prec_equiv(const std::string& f, const std::string& g) const {
  auto fi = prec_class_.find(f), gi = prec_class_.find(g);
  if (fi == prec_class_.end() || gi == prec_class_.end()) return false;
  return fi->second == gi->second;
}

TermPtr Signature::make_fun(const std::string& symbol,
                            std::vector<TermPtr> args) const {
  const FunctionDecl& fd = decl(symbol);
  return Term::fun(symbol, fd.arg_types, fd.result, std::move(args));
}

}  // namespace idts
