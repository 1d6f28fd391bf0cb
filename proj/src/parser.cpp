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

#include "idts/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "idts/errors.hpp"

namespace idts {

std::string to_string(const Diagnostic& d) {
  if (d.line <= 0) return d.message;
  return std::to_string(d.line) + ":" + std::to_string(d.col) + ": " +
         d.message;
}

namespace {

enum class Tok {
  Ident,
  Int,
  Dot,
  Comma,
  Colon,
  Equal,
  Pipe,
  LParen,
  RParen,
  Backslash,
  Arrow,      // ->
  RuleArrow,  // -->
  Greater,
  Tilde,
  Bad,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line = 0;
  int col = 0;
};

struct ParseError {
  int line = 0;
  int col = 0;
  std::string message;
};

[[noreturn]] void err(int line, int col, const std::string& msg) {
  throw ParseError{line, col, msg};
}

[[noreturn]] void err(const Token& t, const std::string& msg) {
  err(t.line, t.col, msg);
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    col += static_cast<int>(n);
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    int l = line, co = col;
    if (ident_start(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::Ident, text.substr(i, j - i), l, co});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      out.push_back({Tok::Int, text.substr(i, j - i), l, co});
      advance(j - i);
      continue;
    }
    if (c == '-') {
      if (text.compare(i, 3, "-->") == 0) {
        out.push_back({Tok::RuleArrow, "-->", l, co});
        advance(3);
      } else if (text.compare(i, 2, "->") == 0) {
        out.push_back({Tok::Arrow, "->", l, co});
        advance(2);
      } else {
        out.push_back({Tok::Bad, "-", l, co});
        advance(1);
      }
      continue;
    }
    Tok k = Tok::Bad;
    switch (c) {
      case '.': k = Tok::Dot; break;
      case ',': k = Tok::Comma; break;
      case ':': k = Tok::Colon; break;
      case '=': k = Tok::Equal; break;
      case '|': k = Tok::Pipe; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '\\': k = Tok::Backslash; break;
      case '>': k = Tok::Greater; break;
      case '~': k = Tok::Tilde; break;
      default: k = Tok::Bad; break;
    }
    out.push_back({k, std::string(1, c), l, co});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "inductive", "symbol", "precedence", "rule",  "term", "option",
      "if",        "status", "lex",        "mul",   "arity"};
  return words;
}

bool is_statement_keyword(const std::string& s) {
  return s == "inductive" || s == "symbol" || s == "precedence" ||
         s == "rule" || s == "term" || s == "option";
}

void check_fresh_name(const Token& t) {
  if (reserved_words().count(t.text)) {
    err(t, "'" + t.text + "' is a reserved word");
  }
  if (t.text.rfind("_bot_", 0) == 0) {
    err(t, "names starting with '_bot_' are reserved");
  }
}

// Unelaborated term: identifiers are resolved to binders, symbols or rule
// variables only once the signature is sealed.
struct RawTerm {
  enum Kind { Ident, Lam, Seq, Call } kind = Ident;
  int line = 0;
  int col = 0;
  std::string name;           // Ident and Call: the identifier; Lam: binder
  Type ann;                   // Lam: binder annotation
  std::vector<RawTerm> kids;  // Lam: body; Seq: elements; Call: arguments
};

struct TokenStream {
  const std::vector<Token>& ts;
  size_t p = 0;

  const Token& peek() const { return ts[p]; }
  bool at(Tok k) const { return ts[p].kind == k; }
  bool at_word(const char* w) const {
    return at(Tok::Ident) && ts[p].text == w;
  }
  Token take() {
    Token t = ts[p];
    if (t.kind != Tok::End) ++p;
    return t;
  }
  Token expect(Tok k, const char* what) {
    if (!at(k)) err(peek(), std::string("expected ") + what);
    return take();
  }
};

int parse_int(const Token& t) {
  try {
    return std::stoi(t.text);
  } catch (const std::exception&) {
    err(t, "number out of range");
  }
}

Type parse_type(TokenStream& in);

Type parse_type_atom(TokenStream& in) {
  if (in.at(Tok::LParen)) {
    in.take();
    Type t = parse_type(in);
    in.expect(Tok::RParen, "')'");
    return t;
  }
  Token id = in.expect(Tok::Ident, "a type name");
  if (reserved_words().count(id.text)) {
    err(id, "'" + id.text + "' is a reserved word");
  }
  return Type::ind(id.text);
}

Type parse_type(TokenStream& in) {
  Type lhs = parse_type_atom(in);
  if (in.at(Tok::Arrow)) {
    in.take();
    return Type::arrow(lhs, parse_type(in));
  }
  return lhs;
}

RawTerm parse_raw_term(TokenStream& in);

RawTerm parse_raw_atom(TokenStream& in) {
  if (in.at(Tok::LParen)) {
    Token lp = in.take();
    std::vector<RawTerm> elems;
    while (!in.at(Tok::RParen)) {
      if (in.at(Tok::End)) err(in.peek(), "unterminated '('");
      elems.push_back(parse_raw_term(in));
    }
    in.take();
    if (elems.empty()) err(lp, "empty parentheses");
    if (elems.size() == 1) return elems[0];
    RawTerm seq;
    seq.kind = RawTerm::Seq;
    seq.line = lp.line;
    seq.col = lp.col;
    seq.kids = std::move(elems);
    return seq;
  }
  Token id = in.expect(Tok::Ident, "a term");
  check_fresh_name(id);
  if (in.at(Tok::LParen)) {
    in.take();
    std::vector<RawTerm> args;
    if (!in.at(Tok::RParen)) {
      args.push_back(parse_raw_term(in));
      while (in.at(Tok::Comma)) {
        in.take();
        args.push_back(parse_raw_term(in));
      }
    }
    in.expect(Tok::RParen, "')'");
    RawTerm call;
    call.kind = RawTerm::Call;
    call.line = id.line;
    call.col = id.col;
    call.name = id.text;
    call.kids = std::move(args);
    return call;
  }
  RawTerm v;
  v.kind = RawTerm::Ident;
  v.line = id.line;
  v.col = id.col;
  v.name = id.text;
  return v;
}

// term ::= \x:TYPE. term | atom
// atom ::= IDENT | IDENT(term, ...) | (term term ...)
// A lambda body is itself one term, so applications in a body need parens.
RawTerm parse_raw_term(TokenStream& in) {
  if (in.at(Tok::Backslash)) {
    Token bs = in.take();
    Token x = in.expect(Tok::Ident, "a binder name");
    check_fresh_name(x);
    in.expect(Tok::Colon, "':'");
    Type t = parse_type(in);
    in.expect(Tok::Dot, "'.'");
    RawTerm body = parse_raw_term(in);
    RawTerm lam;
    lam.kind = RawTerm::Lam;
    lam.line = bs.line;
    lam.col = bs.col;
    lam.name = x.text;
    lam.ann = t;
    lam.kids.push_back(std::move(body));
    return lam;
  }
  return parse_raw_atom(in);
}

// Maps identifiers against a sealed signature. Resolution order: lambda
// binders, then declared symbols, then rule variables. A variable's type is
// fixed by its first use; later uses must agree.
struct Elaborator {
  const Signature& sig;
  std::map<std::string, Type> vars;
  std::vector<std::pair<std::string, Type>> binders;

  void check_expected(const RawTerm& t, const Type& actual,
                      const std::optional<Type>& expected) {
    if (expected && !(actual == *expected)) {
      err(t.line, t.col,
          "term has type " + to_string(actual) + " but " +
              to_string(*expected) + " is expected");
    }
  }

  bool is_unresolved_var(const RawTerm& t) const {
    if (t.kind != RawTerm::Ident) return false;
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      if (it->first == t.name) return false;
    }
    return !sig.has_symbol(t.name) && !vars.count(t.name);
  }

  TermPtr infer(const RawTerm& t, const std::optional<Type>& expected) {
    switch (t.kind) {
      case RawTerm::Lam: {
        std::optional<Type> body_expected;
        if (expected) {
          if (!expected->is_arrow()) {
            err(t.line, t.col,
                "lambda cannot have type " + to_string(*expected));
          }
          if (!(expected->domain() == t.ann)) {
            err(t.line, t.col,
                "binder type " + to_string(t.ann) +
                    " does not match expected domain " +
                    to_string(expected->domain()));
          }
          body_expected = expected->codomain();
        }
        binders.emplace_back(t.name, t.ann);
        TermPtr body = infer(t.kids[0], body_expected);
        binders.pop_back();
        return Term::abs(t.name, t.ann, body);
      }
      case RawTerm::Ident: {
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
          if (it->first == t.name) {
            check_expected(t, it->second, expected);
            return Term::var(t.name, it->second);
          }
        }
        if (sig.has_symbol(t.name)) {
          const FunctionDecl& fd = sig.decl(t.name);
          if (fd.arity != 0) {
            err(t.line, t.col,
                "symbol '" + t.name + "' has arity " +
                    std::to_string(fd.arity) + " and must be written " +
                    t.name + "(...)");
          }
          check_expected(t, fd.result, expected);
          return sig.make_fun(t.name, {});
        }
        auto it = vars.find(t.name);
        if (it != vars.end()) {
          check_expected(t, it->second, expected);
          return Term::var(t.name, it->second);
        }
        if (!expected) {
          err(t.line, t.col,
              "cannot infer the type of variable '" + t.name + "'");
        }
        vars.emplace(t.name, *expected);
        return Term::var(t.name, *expected);
      }
      case RawTerm::Call: {
        if (!sig.has_symbol(t.name)) {
          err(t.line, t.col, "unknown symbol '" + t.name + "'");
        }
        const FunctionDecl& fd = sig.decl(t.name);
        if (static_cast<int>(t.kids.size()) != fd.arity) {
          err(t.line, t.col,
              "symbol '" + t.name + "' expects " + std::to_string(fd.arity) +
                  " arguments but got " + std::to_string(t.kids.size()));
        }
        std::vector<TermPtr> args;
        args.reserve(t.kids.size());
        for (size_t i = 0; i < t.kids.size(); ++i) {
          args.push_back(infer(t.kids[i], fd.arg_types[i]));
        }
        check_expected(t, fd.result, expected);
        return sig.make_fun(t.name, std::move(args));
      }
      case RawTerm::Seq: {
        if (expected && is_unresolved_var(t.kids[0])) {
          // A not-yet-typed variable applied to arguments, in a position
          // whose type is known: the argument types plus the expected
          // result determine the variable's type. This is how left-hand
          // side patterns like (F x) under a binder are typed.
          std::vector<TermPtr> args;
          args.reserve(t.kids.size() - 1);
          for (size_t i = 1; i < t.kids.size(); ++i) {
            args.push_back(infer(t.kids[i], std::nullopt));
          }
          Type ty = *expected;
          for (size_t i = args.size(); i-- > 0;) {
            ty = Type::arrow(args[i]->type(), ty);
          }
          vars.emplace(t.kids[0].name, ty);
          TermPtr head = Term::var(t.kids[0].name, ty);
          for (auto& a : args) head = Term::app(head, std::move(a));
          return head;
        }
        TermPtr head = infer(t.kids[0], std::nullopt);
        for (size_t i = 1; i < t.kids.size(); ++i) {
          if (!head->type().is_arrow()) {
            err(t.kids[i].line, t.kids[i].col,
                "term of type " + to_string(head->type()) +
                    " cannot be applied");
          }
          TermPtr arg = infer(t.kids[i], head->type().domain());
          head = Term::app(head, arg);
        }
        check_expected(t, head->type(), expected);
        return head;
      }
    }
    err(t.line, t.col, "internal: unhandled term form");
  }
};

struct FileParser {
  TokenStream in;
  SpecFile out;
  std::shared_ptr<Signature> sig;
  bool seal_attempted = false;
  bool seal_ok = false;
  int rule_counter = 0;
  std::set<std::string> term_names;

  explicit FileParser(const std::vector<Token>& toks)
      : in{toks}, sig(std::make_shared<Signature>()) {
    out.sig = sig;
  }

  void diagnose(const ParseError& e) {
    out.errors.push_back({e.line, e.col, e.message});
  }

  // After an error inside a statement, skip to just past its '.', stopping
  // early at a statement keyword (missing dot) or end of input.
  void recover() {
    while (!in.at(Tok::End)) {
      if (in.at(Tok::Dot)) {
        in.take();
        return;
      }
      if (in.at(Tok::Ident) && is_statement_keyword(in.peek().text)) return;
      in.take();
    }
  }

  // First rule or named term freezes the declarations. Structural problems
  // become error diagnostics; verdict-grade findings stay on the report.
  bool ensure_sealed() {
    if (seal_attempted) return seal_ok;
    seal_attempted = true;
    ValidationReport report = sig->validate();
    for (const auto& e : report.errors) out.errors.push_back({0, 0, e});
    for (const auto& w : report.warnings) out.warnings.push_back({0, 0, w});
    if (!report.ok()) return false;
    sig->seal();
    out.rules = std::make_shared<RuleSystem>(sig);
    seal_ok = true;
    return true;
  }

  void require_declaration_phase(const Token& kw) {
    if (seal_attempted) {
      err(kw, "declarations must precede rules and named terms");
    }
  }

  void run() {
    while (!in.at(Tok::End)) {
      try {
        statement();
      } catch (const ParseError& e) {
        diagnose(e);
        recover();
      }
    }
    ensure_sealed();
  }

  void statement() {
    Token kw = in.expect(Tok::Ident, "a statement keyword");
    if (kw.text == "inductive") return inductive_stmt(kw);
    if (kw.text == "symbol") return symbol_stmt(kw);
    if (kw.text == "precedence") return precedence_stmt(kw);
    if (kw.text == "option") return option_stmt(kw);
    if (kw.text == "rule") return rule_stmt(kw);
    if (kw.text == "term") return term_stmt(kw);
    err(kw, "unknown statement '" + kw.text + "'");
  }

  void inductive_stmt(const Token& kw) {
    require_declaration_phase(kw);
    Token name = in.expect(Tok::Ident, "an inductive type name");
    check_fresh_name(name);
    in.expect(Tok::Equal, "'='");
    struct Ctor {
      Token name;
      Type full;
    };
    std::vector<Ctor> ctors;
    for (;;) {
      Token cn = in.expect(Tok::Ident, "a constructor name");
      check_fresh_name(cn);
      in.expect(Tok::Colon, "':'");
      Type t = parse_type(in);
      ctors.push_back({cn, t});
      if (in.at(Tok::Pipe)) {
        in.take();
        continue;
      }
      break;
    }
    in.expect(Tok::Dot, "'.'");
    try {
      sig->declare_inductive(name.text);
    } catch (const std::exception& e) {
      err(name, e.what());
    }
    for (const Ctor& c : ctors) {
      auto [args, base] = c.full.peel();
      if (!base.is_ind() || base.ind_name() != name.text) {
        err(c.name, "constructor '" + c.name.text + "' must target " +
                        name.text + ", not " + to_string(base));
      }
      try {
        sig->declare_constructor(name.text, c.name.text, args);
      } catch (const std::exception& e) {
        err(c.name, e.what());
      }
    }
  }

  Status parse_status() {
    Token lx = in.expect(Tok::Ident, "'lex'");
    if (lx.text != "lex") err(lx, "expected 'lex'");
    in.expect(Tok::LParen, "'('");
    Status st;
    for (;;) {
      Token m = in.expect(Tok::Ident, "'mul'");
      if (m.text != "mul") err(m, "expected 'mul'");
      std::vector<int> group;
      while (in.at(Tok::Int)) group.push_back(parse_int(in.take()));
      if (group.empty()) err(in.peek(), "expected argument indices");
      st.groups.push_back(std::move(group));
      if (in.at(Tok::Comma)) {
        in.take();
        continue;
      }
      break;
    }
    in.expect(Tok::RParen, "')'");
    return st;
  }

  void symbol_stmt(const Token& kw) {
    require_declaration_phase(kw);
    Token name = in.expect(Tok::Ident, "a symbol name");
    check_fresh_name(name);
    in.expect(Tok::Colon, "':'");
    Type t = parse_type(in);
    Token aw = in.expect(Tok::Ident, "'arity'");
    if (aw.text != "arity") err(aw, "expected 'arity'");
    Token n = in.expect(Tok::Int, "an arity");
    int arity = parse_int(n);
    std::optional<Status> st;
    if (in.at_word("status")) {
      in.take();
      st = parse_status();
    }
    in.expect(Tok::Dot, "'.'");
    try {
      sig->declare_symbol(name.text, t, arity, st);
    } catch (const std::exception& e) {
      err(name, e.what());
    }
  }

  void precedence_stmt(const Token& kw) {
    require_declaration_phase(kw);
    Token a = in.expect(Tok::Ident, "a symbol name");
    bool greater;
    if (in.at(Tok::Greater)) {
      greater = true;
    } else if (in.at(Tok::Tilde)) {
      greater = false;
    } else {
      err(in.peek(), "expected '>' or '~'");
    }
    in.take();
    Token b = in.expect(Tok::Ident, "a symbol name");
    in.expect(Tok::Dot, "'.'");
    try {
      if (greater) {
        sig->add_precedence_greater(a.text, b.text);
      } else {
        sig->add_precedence_equiv(a.text, b.text);
      }
    } catch (const std::exception& e) {
      err(a, e.what());
    }
  }

  void option_stmt(const Token& kw) {
    require_declaration_phase(kw);
    Token name = in.expect(Tok::Ident, "an option name");
    in.expect(Tok::Dot, "'.'");
    if (name.text == "allow_constructor_rules") {
      sig->set_allow_constructor_rules(true);
    } else if (name.text == "allow_non_strictly_positive") {
      sig->set_allow_non_strictly_positive(true);
    } else {
      err(name, "unknown option '" + name.text + "'");
    }
  }

  void lint_variables(const Token& kw, const Elaborator& el) {
    for (const auto& [name, type] : el.vars) {
      (void)type;
      if (std::islower(static_cast<unsigned char>(name[0]))) {
        out.warnings.push_back(
            {kw.line, kw.col,
             "rule variable '" + name +
                 "' is lowercase; capitalized variables are easier to tell "
                 "apart from symbols"});
      }
    }
  }

  void rule_stmt(const Token& kw) {
    RawTerm lhs = parse_raw_term(in);
    in.expect(Tok::RuleArrow, "'-->'");
    RawTerm rhs = parse_raw_term(in);
    std::vector<std::pair<RawTerm, RawTerm>> raw_conds;
    if (in.at_word("if")) {
      in.take();
      for (;;) {
        RawTerm cl = parse_raw_term(in);
        in.expect(Tok::Equal, "'='");
        RawTerm cr = parse_raw_term(in);
        raw_conds.emplace_back(std::move(cl), std::move(cr));
        if (in.at(Tok::Comma)) {
          in.take();
          continue;
        }
        break;
      }
    }
    in.expect(Tok::Dot, "'.'");
    if (!ensure_sealed()) return;

    Elaborator el{*sig, {}, {}};
    Rule rule;
    rule.name = "r" + std::to_string(++rule_counter);
    rule.lhs = el.infer(lhs, std::nullopt);
    rule.rhs = el.infer(rhs, rule.lhs->type());
    for (auto& [cl, cr] : raw_conds) {
      TermPtr l = el.infer(cl, std::nullopt);
      TermPtr r = el.infer(cr, l->type());
      rule.conditions.emplace_back(l, r);
    }
    lint_variables(kw, el);
    try {
      out.rules->add_rule(rule);
    } catch (const RuleError& e) {
      out.rule_rejections.push_back({kw.line, kw.col, e.what()});
    }
  }

  void term_stmt(const Token& kw) {
    (void)kw;
    Token name = in.expect(Tok::Ident, "a term name");
    check_fresh_name(name);
    in.expect(Tok::Equal, "'='");
    RawTerm raw = parse_raw_term(in);
    in.expect(Tok::Dot, "'.'");
    if (!ensure_sealed()) return;
    if (sig->has_symbol(name.text)) {
      err(name, "'" + name.text + "' is already a declared symbol");
    }
    if (!term_names.insert(name.text).second) {
      err(name, "named term '" + name.text + "' is already defined");
    }
    Elaborator el{*sig, {}, {}};
    TermPtr t = el.infer(raw, std::nullopt);
    if (!free_vars(t).empty()) {
      err(name, "named term '" + name.text + "' contains free variables");
    }
    out.named_terms.emplace_back(name.text, t);
  }
};

}  // namespace

SpecFile parse_file(const std::string& text) {
  std::vector<Token> toks = lex(text);
  FileParser fp(toks);
  fp.run();
  return std::move(fp.out);
}

SpecFile parse_path(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    SpecFile out;
    out.sig = std::make_shared<Signature>();
    out.errors.push_back({0, 0, "cannot read file: " + path});
    return out;
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_file(ss.str());
}

std::optional<Type> parse_type_string(const std::string& text,
                                      std::string* error) {
  try {
    std::vector<Token> toks = lex(text);
    TokenStream in{toks};
    Type t = parse_type(in);
    if (!in.at(Tok::End)) {
      err(in.peek(), "unexpected input after type");
    }
    return t;
  } catch (const ParseError& e) {
    if (error) *error = to_string(Diagnostic{e.line, e.col, e.message});
    return std::nullopt;
  }
}

TermPtr parse_term(const std::string& text, const Signature& sig,
                   std::string* error) {
  try {
    std::vector<Token> toks = lex(text);
    TokenStream in{toks};
    RawTerm raw = parse_raw_term(in);
    if (!in.at(Tok::End)) {
      err(in.peek(), "unexpected input after term");
    }
    Elaborator el{sig, {}, {}};
    return el.infer(raw, std::nullopt);
  } catch (const ParseError& e) {
    if (error) *error = to_string(Diagnostic{e.line, e.col, e.message});
    return nullptr;
  } catch (const std::exception& e) {
    if (error) *error = e.what();
    return nullptr;
  }
}

}  // namespace idts
