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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "idts/erasure.hpp"
#include "idts/errors.hpp"
#include "idts/parser.hpp"
#include "idts/printer.hpp"
#include "idts/schema.hpp"
#include "idts/transforms.hpp"

namespace {

using namespace idts;

// Exit contract: 0 accepted/success, 1 negative verdict on well-formed
// input, 2 parse or type errors.
constexpr int kAccepted = 0;
constexpr int kRejected = 1;
constexpr int kBadInput = 2;

void print_warnings(const SpecFile& f) {
  for (const auto& w : f.warnings) {
    std::cerr << "warning: " << to_string(w) << "\n";
  }
}

int report_input_errors(const SpecFile& f) {
  for (const auto& d : f.errors) {
    std::cerr << "error: " << to_string(d) << "\n";
  }
  print_warnings(f);
  return kBadInput;
}

// Resolves -e arguments: a named term from the file, else term syntax.
TermPtr resolve_term(const SpecFile& f, const std::string& expr,
                     std::string* error) {
  for (const auto& [name, t] : f.named_terms) {
    if (name == expr) return t;
  }
  TermPtr t = parse_term(expr, *f.sig, error);
  if (!t) return nullptr;
  // Identifiers that coincide with named terms stand for those terms.
  Substitution theta;
  for (const auto& [v, ty] : free_vars_typed(t)) {
    for (const auto& [name, def] : f.named_terms) {
      if (name != v) continue;
      if (!(def->type() == ty)) {
        *error = "named term '" + name + "' has type " +
                 to_string(def->type()) + " but is used at " + to_string(ty);
        return nullptr;
      }
      theta.bind(v, def);
      break;
    }
  }
  return substitute(t, theta);
}

bool type_known(const Signature& sig, const Type& t) {
  if (t.is_ind()) return sig.has_inductive(t.ind_name());
  return type_known(sig, t.domain()) && type_known(sig, t.codomain());
}

int cmd_check(const std::string& path, bool explain, bool structured) {
  SpecFile f = parse_path(path);
  if (!f.ok()) return report_input_errors(f);
  print_warnings(f);
  SchemaReport report = check_system(*f.rules);
  bool accepted = report.accepted_overall && f.rule_rejections.empty();
  if (structured) {
    nlohmann::json j = check_report_json(*f.sig, report, explain);
    j["command"] = "check";
    j["rule_rejections"] = nlohmann::json::array();
    for (const auto& d : f.rule_rejections) {
      j["rule_rejections"].push_back(to_string(d));
    }
    j["accepted"] = accepted;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& d : f.rule_rejections) {
      std::cout << "rule rejected: " << to_string(d) << "\n";
    }
    std::cout << render_check_report(*f.sig, report, explain);
    std::cout << "accepted: " << (accepted ? "yes" : "no") << "\n";
  }
  return accepted ? kAccepted : kRejected;
}

int cmd_normalize(const std::string& path, const std::string& expr, long fuel,
                  const std::string& strategy, bool trace, bool structured) {
  SpecFile f = parse_path(path);
  if (!f.ok()) return report_input_errors(f);
  print_warnings(f);
  std::string perr;
  TermPtr t = resolve_term(f, expr, &perr);
  if (!t) {
    std::cerr << "error: " << perr << "\n";
    return kBadInput;
  }
  EvalLimits limits;
  limits.fuel = fuel;
  Strategy st =
      strategy == "innermost" ? Strategy::Innermost : Strategy::Outermost;
  NormalizeResult r = normalize(*f.rules, t, limits, st, trace);
  if (structured) {
    nlohmann::json j = normalize_json(r, trace);
    j["command"] = "normalize";
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render_normalize(r, trace);
  }
  return r.completed ? kAccepted : kRejected;
}

int cmd_recursors(const std::string& path, const std::string& cls,
                  const std::string& target_text, bool structured) {
  SpecFile f = parse_path(path);
  if (!f.ok()) return report_input_errors(f);
  print_warnings(f);
  if (!f.sig->has_inductive(cls)) {
    std::cerr << "error: unknown inductive type '" << cls << "'\n";
    return kBadInput;
  }
  std::string terr;
  std::optional<Type> target = parse_type_string(target_text, &terr);
  if (!target) {
    std::cerr << "error: " << terr << "\n";
    return kBadInput;
  }
  if (!type_known(*f.sig, *target)) {
    std::cerr << "error: target type " << to_string(*target)
              << " mentions an undeclared inductive type\n";
    return kBadInput;
  }
  RecursorBundle b;
  try {
    b = generate_recursors(*f.sig, cls, *target);
  } catch (const RecursorError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  }
  if (structured) {
    nlohmann::json j = recursors_json(b);
    j["command"] = "recursors";
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& [member, symbol] : b.recursors) {
      (void)member;
      std::cout << symbol_source(b.extended->decl(symbol)) << "\n";
    }
    for (size_t i = 1; i < b.recursors.size(); ++i) {
      std::cout << "precedence " << b.recursors[0].second << " ~ "
                << b.recursors[i].second << " .\n";
    }
    for (const Rule& r : b.rules) std::cout << rule_source(r) << "\n";
  }
  return kAccepted;
}

int cmd_currify(const std::string& path, const std::string& symbol,
                bool structured) {
  SpecFile f = parse_path(path);
  if (!f.ok()) return report_input_errors(f);
  print_warnings(f);
  if (!f.sig->has_symbol(symbol)) {
    std::cerr << "error: unknown symbol '" << symbol << "'\n";
    return kBadInput;
  }
  CurrifyResult c;
  try {
    c = currify(*f.sig, symbol);
  } catch (const ArityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  }
  if (structured) {
    nlohmann::json j = currify_json(c);
    j["command"] = "currify";
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << symbol_source(c.extended->decl(c.curried)) << "\n";
    std::cout << "precedence " << c.curried << " > " << c.symbol << " .\n";
    std::cout << rule_source(c.rule) << "\n";
  }
  return kAccepted;
}

int cmd_encode_cond(const std::string& path, bool structured) {
  SpecFile f = parse_path(path);
  if (!f.ok()) return report_input_errors(f);
  print_warnings(f);
  EncodeResult enc;
  try {
    enc = encode_conditional(*f.sig, f.rules->rules());
  } catch (const EncodingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  }
  std::string spec = file_source(*enc.extended, enc.rules, f.named_terms);
  if (structured) {
    nlohmann::json j = encode_json(enc);
    j["command"] = "encode-cond";
    j["spec"] = spec;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << spec;
  }
  return kAccepted;
}

int cmd_erase(const std::string& path, const std::string& expr,
              const std::string& wrt, bool structured) {
  SpecFile f = parse_path(path);
  if (!f.ok()) return report_input_errors(f);
  print_warnings(f);
  if (!f.sig->has_inductive(wrt)) {
    std::cerr << "error: unknown inductive type '" << wrt << "'\n";
    return kBadInput;
  }
  std::string perr;
  TermPtr t = resolve_term(f, expr, &perr);
  if (!t) {
    std::cerr << "error: " << perr << "\n";
    return kBadInput;
  }
  ErasureContext ctx(*f.sig, wrt);
  TermPtr erased = ctx.erase(t);
  auto positive = s_positive_subterms(*f.sig, t, wrt);
  if (structured) {
    nlohmann::json j;
    j["command"] = "erase";
    j["erased"] = term_source(erased);
    j["positive"] = s_positive(*f.sig, t, wrt);
    j["positive_subterms"] = nlohmann::json::array();
    for (const auto& [pos, sub] : positive) {
      j["positive_subterms"].push_back(
          {{"position", position_to_string(pos)}, {"term", term_source(sub)}});
    }
    j["bottoms"] = nlohmann::json::array();
    for (const auto& [name, ty] : ctx.bottoms_used()) {
      j["bottoms"].push_back({{"symbol", name}, {"type", to_string(ty)}});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << term_source(erased) << "\n";
    for (const auto& [name, ty] : ctx.bottoms_used()) {
      std::cout << "# " << name << " erases subterms of type " << to_string(ty)
                << "\n";
    }
  }
  return kAccepted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for inductive data type systems"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));

  std::string file;
  bool explain = false;
  auto* check = app.add_subcommand(
      "check", "validate the declarations and schema-check every rule");
  check->add_option("file", file, "workbench file")->required();
  check->add_flag("--explain", explain, "print full derivations");

  std::string expr;
  long fuel = 10000;
  std::string strategy = "outermost";
  bool trace = false;
  auto* norm = app.add_subcommand("normalize", "rewrite a term to normal form");
  norm->add_option("file", file, "workbench file")->required();
  norm->add_option("-e,--expr", expr, "term, or the name of a named term")
      ->required();
  norm->add_option("--fuel", fuel, "step budget");
  norm->add_option("--strategy", strategy, "redex selection")
      ->check(CLI::IsMember({"outermost", "innermost"}));
  norm->add_flag("--trace", trace, "print every step");

  std::string cls, target;
  auto* rec = app.add_subcommand(
      "recursors", "generate recursor symbols and rules for an inductive class");
  rec->add_option("file", file, "workbench file")->required();
  rec->add_option("--class", cls, "a member of the inductive class")->required();
  rec->add_option("--target", target, "result type of the recursion")
      ->required();

  std::string symbol;
  auto* cur = app.add_subcommand(
      "currify", "add a curried alias for a symbol with positive arity");
  cur->add_option("file", file, "workbench file")->required();
  cur->add_option("--symbol", symbol, "symbol to alias")->required();

  auto* enc = app.add_subcommand(
      "encode-cond", "replace conditional rules by unconditional ones");
  enc->add_option("file", file, "workbench file")->required();

  std::string wrt;
  auto* ers = app.add_subcommand(
      "erase", "replace subterms not positive for a type by bottoms");
  ers->add_option("file", file, "workbench file")->required();
  ers->add_option("-e,--expr", expr, "term, or the name of a named term")
      ->required();
  ers->add_option("--wrt", wrt, "the inductive type to keep")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kBadInput;
  }

  bool structured = format == "structured";
  try {
    if (check->parsed()) return cmd_check(file, explain, structured);
    if (norm->parsed()) {
      return cmd_normalize(file, expr, fuel, strategy, trace, structured);
    }
    if (rec->parsed()) return cmd_recursors(file, cls, target, structured);
    if (cur->parsed()) return cmd_currify(file, symbol, structured);
    if (enc->parsed()) return cmd_encode_cond(file, structured);
    if (ers->parsed()) return cmd_erase(file, expr, wrt, structured);
  } catch (const TypeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRejected;
  }
  return kBadInput;
}
