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

#include "idts/transforms.hpp"

#include <algorithm>

#include "idts/errors.hpp"

namespace idts {

namespace {

Type arrow_chain(const std::vector<Type>& args, Type result) {
  Type t = std::move(result);
  for (size_t i = args.size(); i-- > 0;) t = Type::arrow(args[i], t);
  return t;
}

bool in_class(const std::vector<std::string>& members, const Type& t) {
  return t.is_ind() &&
         std::find(members.begin(), members.end(), t.ind_name()) !=
             members.end();
}

// Rule variables must not shadow a declared symbol: the printed rule
// would read back with the symbol in the variable's place.
std::string rule_var(const Signature& sig, const std::string& base) {
  std::string name = base;
  while (sig.has_symbol(name)) name += "'";
  return name;
}

}  // namespace

RecursorBundle generate_recursors(const Signature& sig,
                                  const std::string& class_member,
                                  const Type& target) {
  if (!sig.sealed()) throw RecursorError("signature must be sealed");
  if (!sig.has_inductive(class_member)) {
    throw RecursorError("unknown inductive type " + class_member);
  }
  const DependencyOrder& dep = sig.dependency();
  RecursorBundle out;
  out.class_members = dep.classes[dep.class_of.at(class_member)];
  out.target = target;

  for (const auto& m : out.class_members) {
    if (!sig.positivity(m).strictly_positive) {
      throw RecursorError("inductive type " + m +
                          " is not strictly positive; no recursor");
    }
  }

  // Branch argument types, one per constructor across the class.
  for (const auto& m : out.class_members) {
    for (const auto& cname : sig.constructors_of(m)) {
      const FunctionDecl& c = sig.decl(cname);
      std::vector<Type> parts = c.arg_types;
      for (const Type& a : c.arg_types) {
        auto [doms, base] = a.peel();
        if (in_class(out.class_members, base)) {
          parts.push_back(arrow_chain(doms, target));
        }
      }
      out.branches.emplace_back(cname, arrow_chain(parts, target));
    }
  }

  std::vector<Type> branch_types;
  for (const auto& [c, t] : out.branches) branch_types.push_back(t);

  // Recursor symbol per class member: branches, scrutinee, target.
  std::vector<std::string> rec_names;
  bool all_exist = true, none_exist = true;
  for (const auto& m : out.class_members) {
    std::string name = "rec_" + m + "_" + type_mangle(target);
    std::vector<Type> args = branch_types;
    args.push_back(Type::ind(m));
    Type full = arrow_chain(args, target);
    if (sig.has_symbol(name)) {
      none_exist = false;
      if (!(sig.decl(name).type == full) ||
          sig.decl(name).arity != static_cast<int>(args.size())) {
        throw RecursorError("symbol " + name +
                            " already declared with a different shape");
      }
    } else {
      all_exist = false;
    }
    rec_names.push_back(name);
    out.recursors.emplace_back(m, name);
  }
  if (!all_exist && !none_exist) {
    throw RecursorError("recursor symbols for this class exist partially; "
                        "refusing to mix");
  }
  out.reused_existing = all_exist;

  auto ext = std::make_shared<Signature>(sig.fork());
  if (!all_exist) {
    for (size_t i = 0; i < out.class_members.size(); ++i) {
      std::vector<Type> args = branch_types;
      args.push_back(Type::ind(out.class_members[i]));
      ext->declare_symbol(rec_names[i], arrow_chain(args, target),
                          static_cast<int>(args.size()));
      if (i > 0) ext->add_precedence_equiv(rec_names[0], rec_names[i]);
    }
  }
  ext->seal();
  out.extended = ext;

  // One rule per constructor: rec(X..., C(x...)) --> (X_C x... H...).
  const int n_branches = static_cast<int>(out.branches.size());
  for (size_t mi = 0; mi < out.class_members.size(); ++mi) {
    const std::string& m = out.class_members[mi];
    for (const auto& cname : sig.constructors_of(m)) {
      const FunctionDecl& c = sig.decl(cname);
      std::vector<TermPtr> branch_vars;
      for (int b = 0; b < n_branches; ++b) {
        branch_vars.push_back(Term::var(
            rule_var(*ext, "X" + std::to_string(b + 1)), branch_types[b]));
      }
      std::vector<TermPtr> ctor_vars;
      for (size_t i = 0; i < c.arg_types.size(); ++i) {
        ctor_vars.push_back(Term::var(
            rule_var(*ext, "x" + std::to_string(i + 1)), c.arg_types[i]));
      }
      std::vector<TermPtr> lhs_args = branch_vars;
      lhs_args.push_back(ext->make_fun(cname, ctor_vars));
      TermPtr lhs = ext->make_fun(rec_names[mi], lhs_args);

      // The branch variable for this constructor.
      int branch_index = 0;
      for (; branch_index < n_branches; ++branch_index) {
        if (out.branches[branch_index].first == cname) break;
      }
      TermPtr rhs = branch_vars[branch_index];
      for (const auto& v : ctor_vars) rhs = Term::app(rhs, v);
      for (size_t i = 0; i < c.arg_types.size(); ++i) {
        auto [doms, base] = c.arg_types[i].peel();
        if (!in_class(out.class_members, base)) continue;
        // Hypothesis: \y.... rec_<base>(X..., (x_i y...)).
        size_t target_mi =
            std::find(out.class_members.begin(), out.class_members.end(),
                      base.ind_name()) -
            out.class_members.begin();
        TermPtr call_arg = ctor_vars[i];
        for (size_t yi = 0; yi < doms.size(); ++yi) {
          call_arg = Term::app(
              call_arg, Term::var("y" + std::to_string(yi + 1), doms[yi]));
        }
        std::vector<TermPtr> call_args = branch_vars;
        call_args.push_back(call_arg);
        TermPtr hyp = ext->make_fun(rec_names[target_mi], call_args);
        for (size_t yi = doms.size(); yi-- > 0;) {
          hyp = Term::abs("y" + std::to_string(yi + 1), doms[yi], hyp);
        }
        rhs = Term::app(rhs, hyp);
      }
      out.rules.push_back(Rule{lhs, rhs, {}, rec_names[mi] + "_" + cname});
    }
  }
  return out;
}

CurrifyResult currify(const Signature& sig, const std::string& symbol) {
  if (!sig.sealed()) throw ArityError("signature must be sealed");
  const FunctionDecl& fd = sig.decl(symbol);
  if (fd.arity < 1) {
    throw ArityError("symbol " + symbol +
                     " has arity 0; nothing to curry");
  }
  CurrifyResult out;
  out.symbol = symbol;
  out.curried = symbol + "_c";

  auto ext = std::make_shared<Signature>(sig.fork());
  if (sig.has_symbol(out.curried)) {
    const FunctionDecl& prev = sig.decl(out.curried);
    if (!(prev.type == fd.type) || prev.arity != 0) {
      throw ArityError("symbol " + out.curried +
                       " already declared with a different shape");
    }
    out.reused_existing = true;
  } else {
    ext->declare_symbol(out.curried, fd.type, 0);
    ext->add_precedence_greater(out.curried, symbol);
  }
  ext->seal();
  out.extended = ext;

  std::vector<TermPtr> vars;
  for (int i = 0; i < fd.arity; ++i) {
    vars.push_back(Term::var("x" + std::to_string(i + 1), fd.arg_types[i]));
  }
  TermPtr body = ext->make_fun(symbol, vars);
  for (int i = fd.arity; i-- > 0;) {
    body = Term::abs("x" + std::to_string(i + 1), fd.arg_types[i], body);
  }
  out.rule = Rule{ext->make_fun(out.curried, {}), body, {}, out.curried};
  return out;
}

EncodeResult encode_conditional(const Signature& sig,
                                const std::vector<Rule>& rules) {
  if (!sig.sealed()) throw EncodingError("signature must be sealed");
  auto ext = std::make_shared<Signature>(sig.fork());
  EncodeResult out;

  // eq symbols created in this run, plus their defining rules, keyed by
  // (condition count, types) via the generated name.
  std::vector<Rule> eq_rules;

  for (const Rule& rule : rules) {
    if (!rule.conditional()) {
      out.rules.push_back(rule);
      continue;
    }
    auto lhs_fv = free_vars(rule.lhs);
    for (const auto& [u, v] : rule.conditions) {
      for (const auto& side : {u, v}) {
        for (const auto& x : free_vars(side)) {
          if (!lhs_fv.count(x)) {
            throw EncodingError("condition variable " + x +
                                " is not free in the left-hand side");
          }
        }
      }
    }

    const size_t n = rule.conditions.size();
    std::string name = "eq" + std::to_string(n);
    std::vector<Type> arg_types;
    for (const auto& [u, v] : rule.conditions) {
      name += "_" + type_mangle(u->type());
      arg_types.push_back(u->type());
      arg_types.push_back(v->type());
    }
    const Type result = rule.lhs->type();
    name += "_" + type_mangle(result);
    arg_types.push_back(result);

    Type full = result;
    for (size_t i = arg_types.size(); i-- > 0;) {
      full = Type::arrow(arg_types[i], full);
    }
    const bool fresh = !ext->has_symbol(name);
    if (fresh) {
      ext->declare_symbol(name, full, static_cast<int>(arg_types.size()));
      // Bottom of the precedence: every already-declared symbol sits above.
      for (const auto& other : sig.symbols()) {
        ext->add_precedence_greater(other, name);
      }
      out.eq_symbols.push_back(name);
    }

    std::vector<TermPtr> enc_args;
    for (const auto& [u, v] : rule.conditions) {
      enc_args.push_back(u);
      enc_args.push_back(v);
    }
    enc_args.push_back(rule.rhs);
    out.rules.push_back(Rule{
        rule.lhs, Term::fun(name, arg_types, result, enc_args), {}, rule.name});

    if (fresh) {
      std::vector<TermPtr> pat_args;
      for (size_t i = 0; i < n; ++i) {
        TermPtr x = Term::var(rule_var(*ext, "x" + std::to_string(i + 1)),
                              arg_types[2 * i]);
        pat_args.push_back(x);
        pat_args.push_back(x);
      }
      TermPtr z = Term::var(rule_var(*ext, "z"), result);
      pat_args.push_back(z);
      eq_rules.push_back(
          Rule{Term::fun(name, arg_types, result, pat_args), z, {}, name});
    }
  }
  for (auto& r : eq_rules) out.rules.push_back(std::move(r));

  ext->seal();
  out.extended = ext;
  return out;
}

}  // namespace idts
