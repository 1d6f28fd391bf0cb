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

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "idts/rewrite.hpp"
#include "idts/signature.hpp"
#include "idts/term.hpp"

namespace idts {

struct Diagnostic {
  int line = 0;  // 1-based; 0 when no position applies
  int col = 0;
  std::string message;
};

std::string to_string(const Diagnostic& d);

// A workbench file, read and elaborated.
//
// Statement forms, each ending with '.', with '#' comments:
//
//   inductive NAME = ctor : TYPE | ctor : TYPE .
//   symbol NAME : TYPE arity N [status lex(mul I ..., ...)] .
//   precedence NAME > NAME .        precedence NAME ~ NAME .
//   option NAME .
//   rule TERM --> TERM [if TERM = TERM, TERM = TERM, ...] .
//   term NAME = TERM .
//
// Declarations come first; the first rule or named term seals the
// signature. Identifiers in rule terms that are not declared symbols and
// not bound by a lambda are rule variables, typed by their first use and
// checked at every later use.
//
// Three outcome grades. `errors` holds syntax and typing problems: the
// file is malformed and nothing else can be trusted. `rule_rejections`
// holds well-formedness verdicts on otherwise readable rules (left side
// not headed by a defined symbol, right side or condition mentioning a
// variable the left side lacks, constructor-headed rule without the
// option); rejected rules are excluded from `rules`. Verdict findings on
// the declarations themselves live in sig->validation().
struct SpecFile {
  std::shared_ptr<Signature> sig;  // sealed when ok()
  std::shared_ptr<RuleSystem> rules;
  std::vector<std::pair<std::string, TermPtr>> named_terms;
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> rule_rejections;
  std::vector<Diagnostic> warnings;

  bool ok() const { return errors.empty(); }
  bool accepted_input() const {
    return errors.empty() && rule_rejections.empty();
  }
};

SpecFile parse_file(const std::string& text);

// Reads and parses `path`; unreadable files become an error diagnostic.
SpecFile parse_path(const std::string& path);

// One term in the concrete syntax, elaborated against a sealed signature.
// Free identifiers that are not symbols become variables when their types
// can be inferred from use. Returns nullptr and fills `error` on failure.
TermPtr parse_term(const std::string& text, const Signature& sig,
                   std::string* error);

// A type in the concrete syntax: identifiers, right-associative '->',
// parentheses. Names are not checked against any signature.
std::optional<Type> parse_type_string(const std::string& text,
                                      std::string* error);

}  // namespace idts
