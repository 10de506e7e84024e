/*
 * Copyright 2026 The deacp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "deacp/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "deacp/errors.hpp"

namespace deacp {

const Proc* SpecFile::find_proc(const std::string& name) const {
  for (const auto& [n, p] : procs)
    if (n == name) return &p;
  return nullptr;
}

const Proc& SpecFile::proc(const std::string& name) const {
  if (const Proc* p = find_proc(name)) return *p;
  throw Error(ErrorKind::Usage, "no process named '" + name + "'");
}

const EvalMap* SpecFile::find_map(const std::string& name) const {
  for (const auto& [n, m] : maps)
    if (n == name) return &m;
  return nullptr;
}

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const char* const kSymbols[] = {"||_", "<->", "||", "->", "<=", ">=", "!=", ":=", "..",
                                "+",   "-",   "*",  ".",  "|",  "[",  "]",  "(",  ")",
                                "{",   "}",   ",",  ";",  "=",  "<",  ">",  "/"};

const std::set<std::string> kReserved = {
    "tau", "delta", "epsilon", "rec", "where", "encap", "hide", "eval",
    "true", "false", "not", "and", "or", "forall", "exists"};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < s.size() && s[i + 1] == '/')) {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    const int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                              s[j] == '\''))
        ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* sym : kSymbols) {
      const std::string_view sv(sym);
      if (s.substr(i, sv.size()) == sv) {
        out.push_back({Tok::Sym, std::string(sv), l, cl});
        advance(sv.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(l, cl, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, SpecFile& spec) : toks_(std::move(toks)), spec_(spec) {}

  void parse_file(const ParseOptions& opts) {
    while (!at_end()) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) fail("expected a section keyword");
      if (t.text == "domain") parse_domain(opts);
      else if (t.text == "vars") parse_vars();
      else if (t.text == "actions") parse_actions();
      else if (t.text == "comm") parse_comm();
      else if (t.text == "maps") parse_maps();
      else if (t.text == "recspec") parse_recspec();
      else if (t.text == "proc") parse_proc();
      else if (t.text == "security") parse_security();
      else fail("unknown section '" + t.text + "'");
    }
    if (opts.carrier) spec_.sig.carrier = *opts.carrier;
  }

  Proc parse_standalone_term() {
    Proc p = parse_alt();
    expect_end();
    return p;
  }

  Cond parse_standalone_cond() {
    Cond c = parse_cond();
    expect_end();
    return c;
  }

  Data parse_standalone_data() {
    Data d = parse_data();
    expect_end();
    return d;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SpecFile& spec_;
  std::vector<std::string> bound_;        // quantified data variables
  std::vector<std::set<std::string>> recvars_;  // recursion variables in scope
  bool domain_seen_ = false;
  bool carrier_fixed_ = false;

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_sym(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_kw(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  bool accept(const char* s) {
    if (is_sym(s)) {
      next();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg, ErrorKind kind = ErrorKind::Syntax) const {
    throw SyntaxError(peek().line, peek().col, msg, kind);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg,
                            ErrorKind kind = ErrorKind::Syntax) const {
    throw SyntaxError(t.line, t.col, msg, kind);
  }
  std::string describe(const Token& t) const {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }
  void expect(const char* s) {
    if (!accept(s)) fail(std::string("expected '") + s + "' but found " + describe(peek()));
  }
  void expect_kw(const char* s) {
    if (!is_kw(s)) fail(std::string("expected '") + s + "' but found " + describe(peek()));
    next();
  }
  void expect_end() {
    if (!at_end()) fail("unexpected " + describe(peek()));
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(std::string("expected ") + what + " but found " +
                                        describe(peek()));
    if (kReserved.count(peek().text))
      fail("'" + peek().text + "' is a reserved word");
    return next().text;
  }
  Value integer() {
    bool neg = accept("-");
    if (peek().kind != Tok::Int) fail("expected an integer but found " + describe(peek()));
    const Token& t = next();
    Value v = 0;
    try {
      v = std::stoll(t.text);
    } catch (const std::exception&) {
      fail_at(t, "integer literal out of range");
    }
    return neg ? -v : v;
  }

  // ---- declarations -------------------------------------------------------

  void check_fresh_name(const Token& t) {
    const std::string& n = t.text;
    if (spec_.sig.vars.contains(n) || spec_.sig.has_action(n) || spec_.find_proc(n) ||
        spec_.find_map(n))
      fail_at(t, "name '" + n + "' is already declared", ErrorKind::Declaration);
    for (const auto& [r, _] : spec_.recspecs)
      if (r == n) fail_at(t, "name '" + n + "' is already declared", ErrorKind::Declaration);
  }

  void parse_domain(const ParseOptions& opts) {
    const Token kw = next();
    if (domain_seen_) fail_at(kw, "duplicate domain declaration", ErrorKind::Declaration);
    if (!spec_.sig.vars.empty() || !spec_.maps.empty() || !spec_.procs.empty())
      fail_at(kw, "domain must precede all other declarations", ErrorKind::Declaration);
    domain_seen_ = true;
    Value lo = integer();
    expect("..");
    Value hi = integer();
    accept(";");
    if (lo > hi) fail_at(kw, "empty domain", ErrorKind::Declaration);
    if (!opts.carrier) spec_.sig.carrier = Carrier{lo, hi};
    (void)carrier_fixed_;
  }

  void parse_vars() {
    next();
    do {
      const Token& t = peek();
      std::string n = ident("a flexible variable name");
      check_fresh_name(t);
      spec_.sig.vars.add(n);
    } while (accept(","));
    accept(";");
  }

  void parse_actions() {
    next();
    do {
      const Token& t = peek();
      std::string n = ident("an action name");
      check_fresh_name(t);
      int arity = 0;
      if (accept("/")) {
        Value a = integer();
        if (a < 0 || a > 16) fail_at(t, "unsupported arity", ErrorKind::Declaration);
        arity = static_cast<int>(a);
      }
      spec_.sig.arities[n] = arity;
    } while (accept(","));
    accept(";");
  }

  void parse_comm() {
    next();
    expect("{");
    while (!accept("}")) {
      const Token& ta = peek();
      std::string a = ident("an action name");
      expect("|");
      const Token& tb = peek();
      std::string b = ident("an action name");
      expect("=");
      const Token& tc = peek();
      std::string c = ident("an action name");
      for (const auto* t : {&ta, &tb, &tc})
        if (!spec_.sig.has_action(t->text))
          fail_at(*t, "undeclared action '" + t->text + "'", ErrorKind::Declaration);
      const int ar = spec_.sig.arity(a);
      if (spec_.sig.arity(b) != ar || spec_.sig.arity(c) != ar)
        fail_at(ta, "communicating actions must have equal arities", ErrorKind::Declaration);
      try {
        spec_.sig.comm.add(a, b, c);
      } catch (const Error& e) {
        fail_at(ta, e.what(), ErrorKind::Declaration);
      }
      if (!accept(";")) accept(",");
    }
    try {
      spec_.sig.comm.validate(spec_.sig.action_names());
    } catch (const Error& e) {
      fail(e.what(), ErrorKind::Declaration);
    }
  }

  EvalMap parse_map_body() {
    // Caller consumed '{'.
    std::vector<EvalMap::Entry> entries;
    std::set<std::string> seen;
    if (!accept("}")) {
      do {
        const Token& t = peek();
        std::string v = ident("a flexible variable");
        if (!spec_.sig.vars.contains(v))
          fail_at(t, "undeclared flexible variable '" + v + "'", ErrorKind::Declaration);
        if (!seen.insert(v).second)
          fail_at(t, "variable '" + v + "' assigned twice", ErrorKind::Declaration);
        expect("=");
        const Token& vt = peek();
        Value val = integer();
        if (!spec_.sig.carrier.contains(val))
          fail_at(vt, "value " + std::to_string(val) + " lies outside the domain",
                  ErrorKind::Declaration);
        entries.emplace_back(v, val);
      } while (accept(","));
      expect("}");
    }
    return spec_.sig.complete_map(entries);
  }

  void parse_maps() {
    next();
    expect("{");
    while (!accept("}")) {
      const Token& t = peek();
      std::string n = ident("a map name");
      check_fresh_name(t);
      expect("=");
      expect("{");
      spec_.maps.emplace_back(n, parse_map_body());
      if (!accept(";")) accept(",");
    }
  }

  RecSpecPtr parse_equations(const Token& where) {
    // Caller consumed '{'. Collect the equation names first so that
    // right-hand sides can refer forward.
    std::set<std::string> names;
    int depth = 0;
    for (std::size_t k = pos_; k < toks_.size(); ++k) {
      const Token& t = toks_[k];
      if (t.kind == Tok::End) break;
      if (t.kind == Tok::Sym) {
        if (t.text == "{" || t.text == "(" || t.text == "[") ++depth;
        else if (t.text == "}" || t.text == ")" || t.text == "]") {
          if (depth == 0) break;
          --depth;
        }
      }
      if (depth == 0 && t.kind == Tok::Ident && k + 1 < toks_.size() &&
          toks_[k + 1].kind == Tok::Sym && toks_[k + 1].text == "=" &&
          (k == pos_ || (toks_[k - 1].kind == Tok::Sym && toks_[k - 1].text == ",")))
        names.insert(t.text);
    }
    recvars_.push_back(names);
    std::vector<std::pair<std::string, Proc>> eqs;
    std::vector<Token> eq_tokens;
    while (true) {
      const Token& t = peek();
      std::string x = ident("a recursion variable");
      for (const auto& [y, _] : eqs)
        if (y == x) fail_at(t, "duplicate equation for '" + x + "'", ErrorKind::Declaration);
      expect("=");
      eqs.emplace_back(x, parse_alt());
      eq_tokens.push_back(t);
      if (!accept(",")) break;
    }
    expect("}");
    recvars_.pop_back();
    // Linear form, with a shared terminal variable for bare action summands.
    std::string end = "End";
    for (int k = 1; names.count(end); ++k) end = "End" + std::to_string(k);
    bool used_end = false;
    for (std::size_t k = 0; k < eqs.size(); ++k) {
      try {
        auto [rhs, used] = linear_sugar(eqs[k].second, end);
        eqs[k].second = rhs;
        used_end |= used;
      } catch (const Error& e) {
        fail_at(eq_tokens[k], "equation for '" + eqs[k].first + "': " + e.what(), e.kind());
      }
    }
    if (used_end) eqs.emplace_back(end, Proc::guard(Cond::truth(), Proc::epsilon()));
    RecSpecPtr spec;
    try {
      spec = std::make_shared<const RecSpec>(std::move(eqs));
    } catch (const Error& e) {
      fail_at(where, e.what(), e.kind());
    }
    auto cycle = unguarded_cycle(*spec);
    if (!cycle.empty()) {
      std::string msg = "unguarded recursion through";
      for (const auto& v : cycle) msg += " " + v;
      fail_at(where, msg, ErrorKind::Guardedness);
    }
    return spec;
  }

  void parse_recspec() {
    const Token kw = next();
    const Token& t = peek();
    std::string n = ident("a specification name");
    check_fresh_name(t);
    expect("{");
    spec_.recspecs.emplace_back(n, parse_equations(kw));
    accept(";");
  }

  void parse_proc() {
    next();
    const Token& t = peek();
    std::string n = ident("a process name");
    check_fresh_name(t);
    expect("=");
    Proc p = parse_alt();
    if (!free_recvars(p).empty())
      fail_at(t, "process '" + n + "' has free recursion variables", ErrorKind::Declaration);
    spec_.procs.emplace_back(n, p);
    expect(";");
  }

  ActionSet parse_action_set() {
    // Caller consumed '{'.
    std::vector<ActionSet::Pattern> pats;
    if (!accept("}")) {
      do {
        if (accept("*")) {
          pats.push_back({ActionSet::Pattern::Kind::All, "", 0});
          continue;
        }
        const Token& t = peek();
        std::string n = ident("an action name or variable");
        if (accept(":=")) {
          if (!spec_.sig.vars.contains(n))
            fail_at(t, "undeclared flexible variable '" + n + "'", ErrorKind::Declaration);
          pats.push_back({ActionSet::Pattern::Kind::AssignTo, n, 0});
        } else {
          if (!spec_.sig.has_action(n))
            fail_at(t, "undeclared action '" + n + "'", ErrorKind::Declaration);
          if (accept("/")) {
            Value a = integer();
            if (a != spec_.sig.arity(n))
              fail_at(t, "action '" + n + "' is declared with arity " +
                             std::to_string(spec_.sig.arity(n)),
                      ErrorKind::Declaration);
            pats.push_back({ActionSet::Pattern::Kind::NameArity, n, static_cast<int>(a)});
          } else {
            pats.push_back({ActionSet::Pattern::Kind::Name, n, 0});
          }
        }
      } while (accept(","));
      expect("}");
    }
    return ActionSet(std::move(pats));
  }

  void parse_security() {
    const Token kw = next();
    if (spec_.security) fail_at(kw, "duplicate security section", ErrorKind::Declaration);
    SecurityDecl sec;
    expect("{");
    while (!accept("}")) {
      if (is_kw("low")) {
        next();
        expect("=");
        expect("{");
        if (!accept("}")) {
          do {
            const Token& t = peek();
            std::string v = ident("a flexible variable");
            if (!spec_.sig.vars.contains(v))
              fail_at(t, "undeclared flexible variable '" + v + "'", ErrorKind::Declaration);
            sec.low.insert(v);
          } while (accept(","));
          expect("}");
        }
      } else if (is_kw("ext")) {
        const Token& t = next();
        expect("=");
        expect("{");
        sec.ext = parse_action_set();
        for (const auto& p : sec.ext.patterns())
          if (p.kind == ActionSet::Pattern::Kind::AssignTo ||
              p.kind == ActionSet::Pattern::Kind::All)
            fail_at(t, "external actions cannot include assignments", ErrorKind::Declaration);
      } else {
        fail("expected 'low' or 'ext' but found " + describe(peek()));
      }
      if (!accept(";")) accept(",");
    }
    spec_.security = std::move(sec);
  }

  // ---- data and conditions ------------------------------------------------

  // With `lenient`, a trailing `+` that does not continue the data term is
  // left for the process level, so `v := e + p` reads as an alternative.
  Data parse_data(bool lenient = false) {
    Data d = parse_data_term();
    while (is_sym("+") || is_sym("-")) {
      const std::size_t save = pos_;
      DataOp op = next().text == "+" ? DataOp::Add : DataOp::Sub;
      if (!lenient) {
        d = Data::apply(op, d, parse_data_term());
        continue;
      }
      try {
        d = Data::apply(op, d, parse_data_term());
      } catch (const SyntaxError&) {
        pos_ = save;
        break;
      }
    }
    return d;
  }

  Data parse_data_term() {
    Data d = parse_data_unary();
    while (accept("*")) d = Data::apply(DataOp::Mul, d, parse_data_unary());
    return d;
  }

  Data parse_data_unary() {
    if (accept("-")) {
      Data inner = parse_data_unary();
      if (inner.is_literal()) return Data::literal(-inner.value());
      return Data::apply(DataOp::Sub, Data::literal(0), inner);
    }
    if (peek().kind == Tok::Int) {
      const Token& t = next();
      try {
        return Data::literal(std::stoll(t.text));
      } catch (const std::exception&) {
        fail_at(t, "integer literal out of range");
      }
    }
    if (accept("(")) {
      Data d = parse_data();
      expect(")");
      return d;
    }
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail("expected a data term but found " + describe(t));
    std::string n = next().text;
    if (std::find(bound_.begin(), bound_.end(), n) != bound_.end()) return Data::bound(n);
    if (spec_.sig.vars.contains(n)) return Data::flexible(n);
    fail_at(t, "undeclared data variable '" + n + "'", ErrorKind::Declaration);
  }

  std::optional<CmpOp> cmp_op() {
    static const std::pair<const char*, CmpOp> ops[] = {
        {"=", CmpOp::Eq}, {"!=", CmpOp::Ne}, {"<", CmpOp::Lt},
        {"<=", CmpOp::Le}, {">", CmpOp::Gt}, {">=", CmpOp::Ge}};
    for (const auto& [s, op] : ops)
      if (accept(s)) return op;
    return std::nullopt;
  }

  Cond parse_cond() {
    if (is_kw("forall") || is_kw("exists")) return parse_quant();
    Cond lhs = parse_impl();
    if (accept("<->")) return Cond::iff(lhs, parse_cond_iff_rhs());
    return lhs;
  }

  Cond parse_cond_iff_rhs() {
    if (is_kw("forall") || is_kw("exists")) return parse_quant();
    Cond lhs = parse_impl();
    if (accept("<->")) return Cond::iff(lhs, parse_cond_iff_rhs());
    return lhs;
  }

  Cond parse_quant() {
    const bool universal = next().text == "forall";
    const Token& t = peek();
    std::string v = ident("a data variable");
    if (spec_.sig.vars.contains(v))
      fail_at(t, "quantified variable '" + v + "' shadows a flexible variable",
              ErrorKind::Declaration);
    expect(".");
    bound_.push_back(v);
    Cond body = parse_cond();
    bound_.pop_back();
    return universal ? Cond::forall(v, body) : Cond::exists(v, body);
  }

  Cond parse_impl() {
    Cond lhs = parse_or();
    if (accept("->")) {
      if (is_kw("forall") || is_kw("exists")) return Cond::implies(lhs, parse_quant());
      return Cond::implies(lhs, parse_impl());
    }
    return lhs;
  }

  Cond parse_or() {
    Cond c = parse_and();
    while (is_kw("or")) {
      next();
      c = Cond::disj(c, parse_and());
    }
    return c;
  }

  Cond parse_and() {
    Cond c = parse_not();
    while (is_kw("and")) {
      next();
      c = Cond::conj(c, parse_not());
    }
    return c;
  }

  Cond parse_not() {
    if (is_kw("not")) {
      next();
      return Cond::negate(parse_not());
    }
    return parse_cond_atom();
  }

  Cond parse_cond_atom() {
    if (is_kw("true")) {
      next();
      return Cond::truth();
    }
    if (is_kw("false")) {
      next();
      return Cond::falsity();
    }
    if (is_kw("forall") || is_kw("exists")) return parse_quant();
    if (is_sym("(")) {
      // Either a parenthesised data term starting a comparison or a
      // parenthesised condition; try the comparison first.
      const std::size_t save = pos_;
      try {
        Data l = parse_data();
        if (auto op = cmp_op()) return Cond::cmp(*op, l, parse_data());
      } catch (const SyntaxError&) {
      }
      pos_ = save;
      next();
      Cond c = parse_cond();
      expect(")");
      return c;
    }
    Data l = parse_data();
    auto op = cmp_op();
    if (!op) fail("expected a comparison operator but found " + describe(peek()));
    return Cond::cmp(*op, l, parse_data());
  }

  // ---- process terms ------------------------------------------------------

  Proc parse_alt() {
    Proc p = parse_merge();
    if (accept("+")) return Proc::alt(p, parse_alt());
    return p;
  }

  Proc parse_merge() {
    Proc p = parse_unit();
    if (accept("||")) return Proc::par(p, parse_merge());
    if (accept("||_")) return Proc::leftmerge(p, parse_merge());
    if (accept("|")) return Proc::commmerge(p, parse_merge());
    return p;
  }

  Proc parse_unit() {
    if (accept("[")) {
      Cond c = parse_cond();
      expect("]");
      expect("->");
      return Proc::guard(c, parse_unit());
    }
    return parse_seq();
  }

  Proc parse_seq() {
    Proc p = parse_primary();
    if (accept(".")) return Proc::seq(p, parse_seq());
    return p;
  }

  bool is_recvar(const std::string& n) const {
    for (auto it = recvars_.rbegin(); it != recvars_.rend(); ++it)
      if (it->count(n)) return true;
    return false;
  }

  Proc parse_primary() {
    const Token& t = peek();
    if (accept("(")) {
      Proc p = parse_alt();
      expect(")");
      return p;
    }
    if (t.kind != Tok::Ident) fail("expected a process term but found " + describe(t));
    const std::string n = t.text;
    if (n == "delta") { next(); return Proc::delta(); }
    if (n == "epsilon") { next(); return Proc::epsilon(); }
    if (n == "tau") { next(); return Proc::action(Action::tau()); }
    if (n == "encap" || n == "hide") {
      next();
      expect("{");
      ActionSet s = parse_action_set();
      expect("(");
      Proc p = parse_alt();
      expect(")");
      return n == "encap" ? Proc::encap(s, p) : Proc::abstr(s, p);
    }
    if (n == "eval") {
      next();
      expect("{");
      EvalMap m;
      if (peek().kind == Tok::Ident && is_sym("}", 1) && spec_.find_map(peek().text)) {
        m = *spec_.find_map(next().text);
        expect("}");
      } else if (peek().kind == Tok::Ident && is_sym("}", 1)) {
        fail("unknown evaluation map '" + peek().text + "'", ErrorKind::Declaration);
      } else {
        m = parse_map_body();
      }
      expect("(");
      Proc p = parse_alt();
      expect(")");
      return Proc::eval(m, p);
    }
    if (n == "rec") {
      const Token kw = next();
      const Token& vt = peek();
      std::string x = ident("a recursion variable");
      expect_kw("where");
      RecSpecPtr spec;
      if (accept("{")) {
        spec = parse_equations(kw);
      } else {
        const Token& st = peek();
        std::string sn = ident("a specification name");
        for (const auto& [name, s] : spec_.recspecs)
          if (name == sn) spec = s;
        if (!spec)
          fail_at(st, "unknown recursive specification '" + sn + "'", ErrorKind::Declaration);
      }
      if (!spec->find(x))
        fail_at(vt, "'" + x + "' has no equation in the specification", ErrorKind::Declaration);
      return Proc::recconst(x, spec);
    }
    if (kReserved.count(n)) fail("unexpected '" + n + "'");
    next();
    if (is_recvar(n)) return Proc::recvar(n);
    if (is_sym(":=")) {
      if (!spec_.sig.vars.contains(n))
        fail_at(t, "undeclared flexible variable '" + n + "'", ErrorKind::Declaration);
      next();
      return Proc::action(Action::assign(n, parse_data(true)));
    }
    if (const Proc* p = spec_.find_proc(n)) return *p;
    if (spec_.sig.has_action(n)) {
      const int arity = spec_.sig.arity(n);
      if (arity == 0) {
        if (is_sym("("))
          fail_at(t, "action '" + n + "' takes no data arguments", ErrorKind::Declaration);
        return Proc::action(Action::basic(n));
      }
      if (!accept("("))
        fail_at(t, "action '" + n + "' needs " + std::to_string(arity) + " argument(s)",
                ErrorKind::Declaration);
      std::vector<Data> args;
      do {
        args.push_back(parse_data());
      } while (accept(","));
      expect(")");
      if (static_cast<int>(args.size()) != arity)
        fail_at(t, "action '" + n + "' is declared with arity " + std::to_string(arity),
                ErrorKind::Declaration);
      return Proc::action(Action::param(n, std::move(args)));
    }
    if (spec_.sig.vars.contains(n))
      fail_at(t, "flexible variable '" + n + "' used as a process; expected ':='",
              ErrorKind::Declaration);
    fail_at(t, "undeclared identifier '" + n + "'", ErrorKind::Declaration);
  }
};

}  // namespace

std::pair<Proc, bool> linear_sugar(const Proc& rhs, const std::string& end_var) {
  bool used = false;
  std::function<Proc(const Proc&)> rec = [&](const Proc& t) -> Proc {
    switch (t.kind()) {
      case Proc::Kind::Delta: return t;
      case Proc::Kind::Alt: return Proc::alt(rec(t.lhs()), rec(t.rhs()));
      case Proc::Kind::Epsilon: return Proc::guard(Cond::truth(), t);
      case Proc::Kind::Act:
        used = true;
        return Proc::guard(Cond::truth(), Proc::seq(t, Proc::recvar(end_var)));
      case Proc::Kind::Seq:
        if (t.lhs().is(Proc::Kind::Act) && t.rhs().is(Proc::Kind::RecVar))
          return Proc::guard(Cond::truth(), t);
        break;
      case Proc::Kind::Guard: {
        const Proc& b = t.arg();
        if (b.is(Proc::Kind::Epsilon)) return t;
        if (b.is(Proc::Kind::Seq) && b.lhs().is(Proc::Kind::Act) &&
            b.rhs().is(Proc::Kind::RecVar))
          return t;
        if (b.is(Proc::Kind::Act)) {
          used = true;
          return Proc::guard(t.cond(), Proc::seq(b, Proc::recvar(end_var)));
        }
        break;
      }
      default: break;
    }
    throw Error(ErrorKind::Shape, "right-hand side is not linear");
  };
  Proc out = rec(rhs);
  return {out, used};
}

SpecFile parse_spec(std::string_view text, const ParseOptions& options) {
  SpecFile spec;
  if (options.carrier) spec.sig.carrier = *options.carrier;
  Parser p(lex(text), spec);
  p.parse_file(options);
  return spec;
}

Proc parse_term(std::string_view text, const SpecFile& context) {
  SpecFile ctx = context;
  Parser p(lex(text), ctx);
  return p.parse_standalone_term();
}

Cond parse_condition(std::string_view text, const SpecFile& context) {
  SpecFile ctx = context;
  Parser p(lex(text), ctx);
  return p.parse_standalone_cond();
}

Data parse_data(std::string_view text, const SpecFile& context) {
  SpecFile ctx = context;
  Parser p(lex(text), ctx);
  return p.parse_standalone_data();
}

namespace {

// Binding levels, loosest first.
enum PLevel { kAlt = 0, kMerge, kGuard, kSeq, kPrim };

PLevel plevel(const Proc& t) {
  switch (t.kind()) {
    case Proc::Kind::Alt: return kAlt;
    case Proc::Kind::Par:
    case Proc::Kind::LeftMerge:
    case Proc::Kind::CommMerge: return kMerge;
    case Proc::Kind::Guard: return kGuard;
    case Proc::Kind::Seq: return kSeq;
    default: return kPrim;
  }
}

void render_proc(std::ostream& os, const Proc& t, bool plus_follows);

void render_at(std::ostream& os, const Proc& t, PLevel min, bool plus_follows) {
  if (plevel(t) < min) {
    os << '(';
    render_proc(os, t, false);
    os << ')';
  } else {
    render_proc(os, t, plus_follows);
  }
}

const char* merge_symbol(Proc::Kind k) {
  switch (k) {
    case Proc::Kind::Par: return " || ";
    case Proc::Kind::LeftMerge: return " ||_ ";
    default: return " | ";
  }
}

// `plus_follows`: the rendering is immediately followed by a process-level
// `+`, so an assignment here must be parenthesised to stop its data term
// from swallowing the operator.
void render_proc(std::ostream& os, const Proc& t, bool plus_follows) {
  switch (t.kind()) {
    case Proc::Kind::Act:
      if (plus_follows && t.action().kind() == Action::Kind::Assign)
        os << '(' << to_string(t.action()) << ')';
      else
        os << to_string(t.action());
      return;
    case Proc::Kind::Delta: os << "delta"; return;
    case Proc::Kind::Epsilon: os << "epsilon"; return;
    case Proc::Kind::Alt:
      render_at(os, t.lhs(), kMerge, true);
      os << " + ";
      render_at(os, t.rhs(), kAlt, plus_follows);
      return;
    case Proc::Kind::Par:
    case Proc::Kind::LeftMerge:
    case Proc::Kind::CommMerge:
      render_at(os, t.lhs(), kGuard, false);
      os << merge_symbol(t.kind());
      render_at(os, t.rhs(), kMerge, plus_follows);
      return;
    case Proc::Kind::Guard:
      os << '[' << to_string(t.cond()) << "] -> ";
      render_at(os, t.arg(), kGuard, plus_follows);
      return;
    case Proc::Kind::Seq:
      render_at(os, t.lhs(), kPrim, false);
      os << " . ";
      render_at(os, t.rhs(), kSeq, plus_follows);
      return;
    case Proc::Kind::Encap:
    case Proc::Kind::Abstr:
      os << (t.is(Proc::Kind::Encap) ? "encap{" : "hide{") << to_string(t.actions()) << "}(";
      render_proc(os, t.arg(), false);
      os << ')';
      return;
    case Proc::Kind::Eval: {
      os << "eval{";
      bool first = true;
      for (const auto& [k, v] : t.map().entries()) {
        if (!first) os << ", ";
        first = false;
        os << k << " = " << v;
      }
      os << "}(";
      render_proc(os, t.arg(), false);
      os << ')';
      return;
    }
    case Proc::Kind::RecVar: os << t.name(); return;
    case Proc::Kind::RecConst: {
      os << "rec " << t.name() << " where { ";
      bool first = true;
      for (const auto& [x, rhs] : t.spec()->equations) {
        if (!first) os << ", ";
        first = false;
        os << x << " = ";
        render_proc(os, rhs, false);
      }
      os << " }";
      return;
    }
  }
}

}  // namespace

std::string render(const Proc& t) {
  std::ostringstream os;
  render_proc(os, t, false);
  return os.str();
}

}  // namespace deacp
