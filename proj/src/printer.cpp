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

#include "idts/printer.hpp"

#include <algorithm>
#include <sstream>

namespace idts {

namespace {

// Spine of a (possibly iterated) application, head first.
std::vector<TermPtr> app_spine(const TermPtr& t) {
  std::vector<TermPtr> out;
  TermPtr cur = t;
  while (cur->kind() == Term::Kind::App) {
    out.push_back(cur->arg());
    cur = cur->fn();
  }
  out.push_back(cur);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

std::string term_source(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Var:
      return t->name();
    case Term::Kind::Fun: {
      if (t->args().empty()) return t->name();
      std::string out = t->name() + "(";
      for (size_t i = 0; i < t->args().size(); ++i) {
        if (i) out += ", ";
        out += term_source(t->args()[i]);
      }
      return out + ")";
    }
    case Term::Kind::Abs:
      return "\\" + t->name() + ":" + to_string(t->binder_type()) + ". " +
             term_source(t->body());
    case Term::Kind::App: {
      std::string out = "(";
      std::vector<TermPtr> spine = app_spine(t);
      for (size_t i = 0; i < spine.size(); ++i) {
        if (i) out += " ";
        out += term_source(spine[i]);
      }
      return out + ")";
    }
  }
  return "<term>";
}

std::string rule_source(const Rule& r) {
  std::string out =
      "rule " + term_source(r.lhs) + " --> " + term_source(r.rhs);
  for (size_t i = 0; i < r.conditions.size(); ++i) {
    out += i == 0 ? " if " : ", ";
    out += term_source(r.conditions[i].first) + " = " +
           term_source(r.conditions[i].second);
  }
  return out + " .";
}

std::string symbol_source(const FunctionDecl& fd) {
  std::string out = "symbol " + fd.name + " : " + to_string(fd.type) +
                    " arity " + std::to_string(fd.arity);
  if (fd.arity > 0 && !(fd.status == Status::default_for(fd.arity))) {
    out += " status " + to_string(fd.status);
  }
  return out + " .";
}

std::string file_source(
    const Signature& sig, const std::vector<Rule>& rules,
    const std::vector<std::pair<std::string, TermPtr>>& named_terms) {
  std::ostringstream out;
  for (const std::string& ind : sig.inductives()) {
    const auto& ctors = sig.constructors_of(ind);
    if (ctors.empty()) {
      out << "# inductive " << ind << " has no constructors\n";
      continue;
    }
    out << "inductive " << ind << " =";
    for (size_t i = 0; i < ctors.size(); ++i) {
      out << (i ? " | " : " ") << ctors[i] << " : "
          << to_string(sig.decl(ctors[i]).type);
    }
    out << " .\n";
  }
  for (const std::string& name : sig.symbols()) {
    if (sig.is_constructor(name)) continue;
    out << symbol_source(sig.decl(name)) << "\n";
  }
  if (sig.allow_constructor_rules()) out << "option allow_constructor_rules .\n";
  if (sig.allow_non_strictly_positive()) {
    out << "option allow_non_strictly_positive .\n";
  }
  for (const auto& [a, b] : sig.declared_greater()) {
    out << "precedence " << a << " > " << b << " .\n";
  }
  for (const auto& [a, b] : sig.declared_equiv()) {
    out << "precedence " << a << " ~ " << b << " .\n";
  }
  for (const Rule& r : rules) out << rule_source(r) << "\n";
  for (const auto& [name, t] : named_terms) {
    out << "term " << name << " = " << term_source(t) << " .\n";
  }
  return out.str();
}

std::string file_source(const SpecFile& f) {
  return file_source(*f.sig, f.rules ? f.rules->rules() : std::vector<Rule>{},
                     f.named_terms);
}

std::string render_check_report(const Signature& sig,
                                const SchemaReport& report, bool explain) {
  std::ostringstream out;
  out << "inductive types:\n";
  if (sig.inductives().empty()) out << "  (none)\n";
  for (const std::string& ind : sig.inductives()) {
    const PositivityInfo& info = sig.positivity(ind);
    out << "  " << ind << ": ";
    if (info.strictly_positive) {
      out << "strictly positive" << (info.basic ? ", basic" : "");
    } else {
      out << "NOT strictly positive";
    }
    out << "\n";
    for (const auto& v : info.violations) {
      out << "    " << v.constructor << " argument " << v.arg_index << ": "
          << v.reason << "\n";
    }
  }
  out << "declarations: " << (report.declarations_ok ? "ok" : "REJECTED")
      << "\n";
  out << "rules:\n";
  if (report.rules.empty()) out << "  (none)\n";
  for (const RuleVerdict& rv : report.rules) {
    out << "  rule " << rv.rule_index + 1 << " [" << rv.head << "]: ";
    if (rv.accepted) {
      out << "accepted";
      if (rv.rhs_derivation) {
        out << "  " << summary_line(*rv.rhs_derivation);
      }
      out << "\n";
      if (explain) {
        if (rv.rhs_derivation) {
          std::istringstream tree(to_string(*rv.rhs_derivation));
          std::string line;
          while (std::getline(tree, line)) out << "    " << line << "\n";
        }
        for (const auto& [var, d] : rv.fv_access) {
          out << "    variable " << var << ": " << summary_line(d) << "\n";
        }
        for (const Derivation& d : rv.condition_derivations) {
          out << "    condition side: " << summary_line(d) << "\n";
        }
      }
    } else {
      out << "REJECTED: " << rv.failure << "\n";
      if (rv.diag) {
        out << "    at " << term_source(rv.diag->term) << ": "
            << rv.diag->reason << "\n";
      }
    }
  }
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  out << "all rules accepted: " << (report.all_rules_accepted ? "yes" : "no")
      << "\n";
  out << "strong normalization guaranteed: "
      << (report.sn_guaranteed ? "yes" : "no") << "\n";
  return out.str();
}

std::string render_normalize(const NormalizeResult& r, bool show_trace) {
  std::ostringstream out;
  if (show_trace) out << to_string(r.trace);
  out << term_source(r.term) << "\n";
  if (!r.completed) {
    out << "fuel exhausted after " << r.steps_used
        << " steps; the term above is not normal\n";
  }
  return out.str();
}

nlohmann::json derivation_json(const Derivation& d) {
  nlohmann::json j;
  j["clause"] = d.clause;
  j["term"] = term_source(d.term);
  if (!d.symbol.empty()) j["symbol"] = d.symbol;
  if (d.seed_index >= 0) j["seed_index"] = d.seed_index;
  if (d.status_cmp) {
    const StatusEvidence& ev = *d.status_cmp;
    nlohmann::json s;
    s["status"] = to_string(ev.status);
    s["deciding_group"] = ev.deciding_group;
    for (const TermPtr& t : ev.left) s["left"].push_back(term_source(t));
    for (const TermPtr& t : ev.right) s["right"].push_back(term_source(t));
    for (const GroupEvidence& g : ev.groups) {
      nlohmann::json gj;
      gj["indices"] = g.indices;
      gj["equal"] = g.equal;
      for (const ArgCompare& ac : g.dominations) {
        nlohmann::json aj;
        aj["left"] = term_source(ac.left);
        aj["right"] = term_source(ac.right);
        aj["constructor_path"] = ac.constructor_path;
        aj["position"] = ac.position;
        for (const TermPtr& ap : ac.applied) {
          aj["applied"].push_back(term_source(ap));
        }
        gj["dominations"].push_back(std::move(aj));
      }
      s["groups"].push_back(std::move(gj));
    }
    j["status_comparison"] = std::move(s);
  }
  for (const Derivation& sub : d.subs) j["subs"].push_back(derivation_json(sub));
  return j;
}

nlohmann::json check_report_json(const Signature& sig,
                                 const SchemaReport& report, bool explain) {
  nlohmann::json j;
  j["inductives"] = nlohmann::json::array();
  for (const std::string& ind : sig.inductives()) {
    const PositivityInfo& info = sig.positivity(ind);
    nlohmann::json ij;
    ij["name"] = ind;
    ij["strictly_positive"] = info.strictly_positive;
    ij["basic"] = info.basic;
    for (const auto& v : info.violations) {
      ij["violations"].push_back({{"constructor", v.constructor},
                                  {"argument", v.arg_index},
                                  {"reason", v.reason}});
    }
    j["inductives"].push_back(std::move(ij));
  }
  j["positivity_ok"] = report.positivity_ok;
  j["declarations_ok"] = report.declarations_ok;
  j["rules"] = nlohmann::json::array();
  for (const RuleVerdict& rv : report.rules) {
    nlohmann::json rj;
    rj["index"] = rv.rule_index;
    rj["head"] = rv.head;
    rj["accepted"] = rv.accepted;
    if (rv.accepted) {
      if (rv.rhs_derivation) {
        rj["summary"] = summary_line(*rv.rhs_derivation);
        if (explain) rj["derivation"] = derivation_json(*rv.rhs_derivation);
      }
      if (explain) {
        for (const auto& [var, d] : rv.fv_access) {
          rj["variables"].push_back(
              {{"name", var}, {"derivation", derivation_json(d)}});
        }
        for (const Derivation& d : rv.condition_derivations) {
          rj["conditions"].push_back(derivation_json(d));
        }
      }
    } else {
      rj["failure"] = rv.failure;
      if (rv.diag) {
        rj["diagnostic"] = {{"term", term_source(rv.diag->term)},
                            {"reason", rv.diag->reason}};
      }
    }
    j["rules"].push_back(std::move(rj));
  }
  j["all_rules_accepted"] = report.all_rules_accepted;
  j["constructor_rules_present"] = report.constructor_rules_present;
  j["sn_guaranteed"] = report.sn_guaranteed;
  j["accepted"] = report.accepted_overall;
  j["warnings"] = report.warnings;
  return j;
}

namespace {

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Rule: return "rule";
    case StepKind::Beta: return "beta";
    case StepKind::Eta: return "eta";
  }
  return "?";
}

}  // namespace

nlohmann::json trace_json(const ReductionTrace& t) {
  nlohmann::json j;
  j["initial"] = term_source(t.initial);
  j["steps"] = nlohmann::json::array();
  for (const TraceStep& s : t.steps) {
    nlohmann::json sj;
    sj["position"] = position_to_string(s.pos);
    sj["kind"] = step_kind_name(s.kind);
    if (s.kind == StepKind::Rule) sj["rule_index"] = s.rule_index;
    sj["after"] = term_source(s.after);
    j["steps"].push_back(std::move(sj));
  }
  return j;
}

nlohmann::json normalize_json(const NormalizeResult& r, bool include_trace) {
  nlohmann::json j;
  j["term"] = term_source(r.term);
  j["completed"] = r.completed;
  j["steps"] = r.steps_used;
  if (include_trace) j["trace"] = trace_json(r.trace);
  return j;
}

nlohmann::json recursors_json(const RecursorBundle& b) {
  nlohmann::json j;
  j["class"] = b.class_members;
  j["target"] = to_string(b.target);
  j["reused_existing"] = b.reused_existing;
  for (const auto& [member, symbol] : b.recursors) {
    j["recursors"].push_back({{"member", member},
                              {"symbol", symbol},
                              {"type", to_string(b.extended->decl(symbol).type)}});
  }
  for (const auto& [ctor, ty] : b.branches) {
    j["branches"].push_back({{"constructor", ctor}, {"type", to_string(ty)}});
  }
  for (const Rule& r : b.rules) {
    j["rules"].push_back({{"name", r.name},
                          {"lhs", term_source(r.lhs)},
                          {"rhs", term_source(r.rhs)}});
  }
  return j;
}

nlohmann::json currify_json(const CurrifyResult& c) {
  nlohmann::json j;
  j["symbol"] = c.symbol;
  j["curried"] = c.curried;
  j["type"] = to_string(c.extended->decl(c.curried).type);
  j["reused_existing"] = c.reused_existing;
  j["rule"] = {{"lhs", term_source(c.rule.lhs)},
               {"rhs", term_source(c.rule.rhs)}};
  return j;
}

nlohmann::json encode_json(const EncodeResult& e) {
  nlohmann::json j;
  j["eq_symbols"] = e.eq_symbols;
  j["rules"] = nlohmann::json::array();
  for (const Rule& r : e.rules) {
    j["rules"].push_back({{"name", r.name},
                          {"lhs", term_source(r.lhs)},
                          {"rhs", term_source(r.rhs)}});
  }
  return j;
}

}  // namespace idts
