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

#include "deacp/condition.hpp"

#include <algorithm>
#include <sstream>

#include "deacp/errors.hpp"

namespace deacp {

class CondNode {
 public:
  Cond::Kind kind = Cond::Kind::True;
  CmpOp op = CmpOp::Eq;
  std::vector<Data> data;
  std::vector<Cond> args;
  std::string var;
  std::size_t hash = 0;

  static Cond make(std::shared_ptr<CondNode> n) {
    std::size_t h = 0xc0ffee ^ static_cast<std::size_t>(n->kind);
    h = hash_combine(h, static_cast<std::size_t>(n->op));
    for (const auto& d : n->data) h = hash_combine(h, d.hash());
    for (const auto& a : n->args) h = hash_combine(h, a.hash());
    if (!n->var.empty()) h = hash_combine(h, std::hash<std::string>{}(n->var));
    n->hash = h;
    return Cond(std::move(n));
  }
};

namespace {

Cond make_simple(Cond::Kind k) {
  auto n = std::make_shared<CondNode>();
  n->kind = k;
  return CondNode::make(std::move(n));
}

Cond make_args(Cond::Kind k, std::vector<Cond> args, std::string var = {}) {
  auto n = std::make_shared<CondNode>();
  n->kind = k;
  n->args = std::move(args);
  n->var = std::move(var);
  return CondNode::make(std::move(n));
}

}  // namespace

Cond Cond::truth() {
  static const Cond t = make_simple(Kind::True);
  return t;
}

Cond Cond::falsity() {
  static const Cond f = make_simple(Kind::False);
  return f;
}

Cond Cond::cmp(CmpOp op, Data lhs, Data rhs) {
  auto n = std::make_shared<CondNode>();
  n->kind = Kind::Cmp;
  n->op = op;
  n->data = {std::move(lhs), std::move(rhs)};
  return CondNode::make(std::move(n));
}

Cond Cond::negate(Cond c) { return make_args(Kind::Not, {std::move(c)}); }
Cond Cond::conj(Cond a, Cond b) { return make_args(Kind::And, {std::move(a), std::move(b)}); }
Cond Cond::disj(Cond a, Cond b) { return make_args(Kind::Or, {std::move(a), std::move(b)}); }
Cond Cond::implies(Cond a, Cond b) {
  return make_args(Kind::Implies, {std::move(a), std::move(b)});
}
Cond Cond::iff(Cond a, Cond b) { return make_args(Kind::Iff, {std::move(a), std::move(b)}); }
Cond Cond::forall(std::string var, Cond body) {
  return make_args(Kind::Forall, {std::move(body)}, std::move(var));
}
Cond Cond::exists(std::string var, Cond body) {
  return make_args(Kind::Exists, {std::move(body)}, std::move(var));
}

Cond::Kind Cond::kind() const { return node_->kind; }
CmpOp Cond::cmp_op() const { return node_->op; }
const Data& Cond::lhs_data() const { return node_->data[0]; }
const Data& Cond::rhs_data() const { return node_->data[1]; }
const Cond& Cond::arg() const { return node_->args[0]; }
const Cond& Cond::lhs() const { return node_->args[0]; }
const Cond& Cond::rhs() const { return node_->args[1]; }
const std::string& Cond::var() const { return node_->var; }
std::size_t Cond::hash() const { return node_->hash; }

bool Cond::operator==(const Cond& o) const {
  if (node_ == o.node_) return true;
  if (node_->hash != o.node_->hash) return false;
  const CondNode& a = *node_;
  const CondNode& b = *o.node_;
  return a.kind == b.kind && a.op == b.op && a.var == b.var &&
         a.data == b.data && a.args == b.args;
}

bool Cond::operator<(const Cond& o) const {
  if (node_ == o.node_) return false;
  const CondNode& a = *node_;
  const CondNode& b = *o.node_;
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.op != b.op) return a.op < b.op;
  if (a.var != b.var) return a.var < b.var;
  if (a.data != b.data)
    return std::lexicographical_compare(a.data.begin(), a.data.end(),
                                        b.data.begin(), b.data.end());
  return std::lexicographical_compare(a.args.begin(), a.args.end(),
                                      b.args.begin(), b.args.end());
}

namespace {

bool compare(CmpOp op, Value a, Value b) {
  switch (op) {
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
    case CmpOp::Lt: return a < b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Ge: return a >= b;
  }
  return false;
}

}  // namespace

bool eval_cond(const Cond& c, const EvalMap& sigma, const Carrier& carrier) {
  BoundEnv env;
  return eval_cond(c, sigma, carrier, env);
}

bool eval_cond(const Cond& c, const EvalMap& sigma, const Carrier& carrier,
               BoundEnv& env) {
  switch (c.kind()) {
    case Cond::Kind::True: return true;
    case Cond::Kind::False: return false;
    case Cond::Kind::Cmp:
      return compare(c.cmp_op(), eval_data(c.lhs_data(), sigma, carrier, env),
                     eval_data(c.rhs_data(), sigma, carrier, env));
    case Cond::Kind::Not: return !eval_cond(c.arg(), sigma, carrier, env);
    case Cond::Kind::And:
      return eval_cond(c.lhs(), sigma, carrier, env) &&
             eval_cond(c.rhs(), sigma, carrier, env);
    case Cond::Kind::Or:
      return eval_cond(c.lhs(), sigma, carrier, env) ||
             eval_cond(c.rhs(), sigma, carrier, env);
    case Cond::Kind::Implies:
      return !eval_cond(c.lhs(), sigma, carrier, env) ||
             eval_cond(c.rhs(), sigma, carrier, env);
    case Cond::Kind::Iff:
      return eval_cond(c.lhs(), sigma, carrier, env) ==
             eval_cond(c.rhs(), sigma, carrier, env);
    case Cond::Kind::Forall:
    case Cond::Kind::Exists: {
      const bool universal = c.kind() == Cond::Kind::Forall;
      env.emplace_back(c.var(), 0);
      bool result = universal;
      for (Value v = carrier.lo; v <= carrier.hi; ++v) {
        env.back().second = v;
        const bool r = eval_cond(c.arg(), sigma, carrier, env);
        if (universal && !r) { result = false; break; }
        if (!universal && r) { result = true; break; }
      }
      env.pop_back();
      return result;
    }
  }
  return false;
}

namespace {

FlexVarDecl restrict_to_occurring(const FlexVarDecl& decl,
                                  std::initializer_list<const Cond*> cs) {
  std::set<std::string> occ;
  for (const Cond* c : cs) collect_flexible(*c, occ);
  FlexVarDecl out;
  for (const auto& n : decl.names())
    if (occ.count(n)) out.add(n);
  for (const auto& n : occ)
    if (!decl.contains(n))
      throw Error(ErrorKind::Declaration,
                  "flexible variable '" + n + "' is not declared");
  return out;
}

}  // namespace

bool valid_iff(const Cond& phi, const Cond& psi, const FlexVarDecl& decl,
               const Carrier& carrier, std::size_t bound) {
  if (phi == psi) return true;
  const FlexVarDecl used = restrict_to_occurring(decl, {&phi, &psi});
  for (const auto& sigma : enumerate_maps(used, carrier, bound))
    if (eval_cond(phi, sigma, carrier) != eval_cond(psi, sigma, carrier))
      return false;
  return true;
}

bool valid(const Cond& phi, const FlexVarDecl& decl, const Carrier& carrier,
           std::size_t bound) {
  return valid_iff(phi, Cond::truth(), decl, carrier, bound);
}

bool satisfiable(const Cond& phi, const FlexVarDecl& decl,
                 const Carrier& carrier, std::size_t bound) {
  if (phi.is_true()) return true;
  if (phi.is_false()) return false;
  const FlexVarDecl used = restrict_to_occurring(decl, {&phi});
  for (const auto& sigma : enumerate_maps(used, carrier, bound))
    if (eval_cond(phi, sigma, carrier)) return true;
  return false;
}

Cond conj_simplified(const Cond& a, const Cond& b) {
  if (a.is_true()) return b;
  if (b.is_true()) return a;
  if (a.is_false() || b.is_false()) return Cond::falsity();
  if (a == b) return a;
  return Cond::conj(a, b);
}

namespace {

void flatten_conj(const Cond& c, std::vector<Cond>& out) {
  if (c.kind() == Cond::Kind::And) {
    flatten_conj(c.lhs(), out);
    flatten_conj(c.rhs(), out);
  } else if (!c.is_true()) {
    out.push_back(c);
  }
}

}  // namespace

Cond canonical_conj(const Cond& c) {
  std::vector<Cond> parts;
  flatten_conj(c, parts);
  for (const auto& p : parts)
    if (p.is_false()) return Cond::falsity();
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  if (parts.empty()) return Cond::truth();
  Cond out = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) out = Cond::conj(parts[i], out);
  return out;
}

Cond substitute(const Cond& c, const EvalMap& sigma) {
  switch (c.kind()) {
    case Cond::Kind::True:
    case Cond::Kind::False: return c;
    case Cond::Kind::Cmp: {
      Data l = substitute(c.lhs_data(), sigma);
      Data r = substitute(c.rhs_data(), sigma);
      if (l == c.lhs_data() && r == c.rhs_data()) return c;
      return Cond::cmp(c.cmp_op(), std::move(l), std::move(r));
    }
    case Cond::Kind::Not: return Cond::negate(substitute(c.arg(), sigma));
    case Cond::Kind::And: return Cond::conj(substitute(c.lhs(), sigma), substitute(c.rhs(), sigma));
    case Cond::Kind::Or: return Cond::disj(substitute(c.lhs(), sigma), substitute(c.rhs(), sigma));
    case Cond::Kind::Implies:
      return Cond::implies(substitute(c.lhs(), sigma), substitute(c.rhs(), sigma));
    case Cond::Kind::Iff: return Cond::iff(substitute(c.lhs(), sigma), substitute(c.rhs(), sigma));
    case Cond::Kind::Forall: return Cond::forall(c.var(), substitute(c.arg(), sigma));
    case Cond::Kind::Exists: return Cond::exists(c.var(), substitute(c.arg(), sigma));
  }
  return c;
}

Cond fold(const Cond& c, const Carrier& carrier) {
  switch (c.kind()) {
    case Cond::Kind::True:
    case Cond::Kind::False: return c;
    case Cond::Kind::Cmp: {
      Data l = fold(c.lhs_data(), carrier);
      Data r = fold(c.rhs_data(), carrier);
      if (l == c.lhs_data() && r == c.rhs_data()) return c;
      return Cond::cmp(c.cmp_op(), std::move(l), std::move(r));
    }
    case Cond::Kind::Not: return Cond::negate(fold(c.arg(), carrier));
    case Cond::Kind::And: return Cond::conj(fold(c.lhs(), carrier), fold(c.rhs(), carrier));
    case Cond::Kind::Or: return Cond::disj(fold(c.lhs(), carrier), fold(c.rhs(), carrier));
    case Cond::Kind::Implies:
      return Cond::implies(fold(c.lhs(), carrier), fold(c.rhs(), carrier));
    case Cond::Kind::Iff: return Cond::iff(fold(c.lhs(), carrier), fold(c.rhs(), carrier));
    case Cond::Kind::Forall: return Cond::forall(c.var(), fold(c.arg(), carrier));
    case Cond::Kind::Exists: return Cond::exists(c.var(), fold(c.arg(), carrier));
  }
  return c;
}

void collect_flexible(const Cond& c, std::set<std::string>& out) {
  switch (c.kind()) {
    case Cond::Kind::True:
    case Cond::Kind::False: return;
    case Cond::Kind::Cmp:
      collect_flexible(c.lhs_data(), out);
      collect_flexible(c.rhs_data(), out);
      return;
    case Cond::Kind::Not:
    case Cond::Kind::Forall:
    case Cond::Kind::Exists: collect_flexible(c.arg(), out); return;
    default:
      collect_flexible(c.lhs(), out);
      collect_flexible(c.rhs(), out);
  }
}

bool has_flexible(const Cond& c) {
  std::set<std::string> s;
  collect_flexible(c, s);
  return !s.empty();
}

namespace {

void check_data_bound(const Data& d, std::vector<std::string>& scope) {
  switch (d.kind()) {
    case Data::Kind::Bound:
      if (std::find(scope.begin(), scope.end(), d.name()) == scope.end())
        throw Error(ErrorKind::MalformedCondition,
                    "data variable '" + d.name() + "' is not bound");
      return;
    case Data::Kind::Apply:
      check_data_bound(d.lhs(), scope);
      check_data_bound(d.rhs(), scope);
      return;
    default: return;
  }
}

void check_bound(const Cond& c, std::vector<std::string>& scope) {
  switch (c.kind()) {
    case Cond::Kind::True:
    case Cond::Kind::False: return;
    case Cond::Kind::Cmp:
      check_data_bound(c.lhs_data(), scope);
      check_data_bound(c.rhs_data(), scope);
      return;
    case Cond::Kind::Not: check_bound(c.arg(), scope); return;
    case Cond::Kind::Forall:
    case Cond::Kind::Exists:
      scope.push_back(c.var());
      check_bound(c.arg(), scope);
      scope.pop_back();
      return;
    default:
      check_bound(c.lhs(), scope);
      check_bound(c.rhs(), scope);
  }
}

// Binding strength, loosest first.
enum Level { kQuant = 0, kIff, kImpl, kOr, kAnd, kNot, kAtom };

Level level(const Cond& c) {
  switch (c.kind()) {
    case Cond::Kind::Forall:
    case Cond::Kind::Exists: return kQuant;
    case Cond::Kind::Iff: return kIff;
    case Cond::Kind::Implies: return kImpl;
    case Cond::Kind::Or: return kOr;
    case Cond::Kind::And: return kAnd;
    case Cond::Kind::Not: return kNot;
    default: return kAtom;
  }
}

void render(std::ostream& os, const Cond& c, int min_level);

void render_at(std::ostream& os, const Cond& c, int min_level) {
  if (level(c) < min_level) {
    os << '(';
    render(os, c, kQuant);
    os << ')';
  } else {
    render(os, c, min_level);
  }
}

void render(std::ostream& os, const Cond& c, int) {
  switch (c.kind()) {
    case Cond::Kind::True: os << "true"; return;
    case Cond::Kind::False: os << "false"; return;
    case Cond::Kind::Cmp:
      os << to_string(c.lhs_data()) << ' ' << to_string(c.cmp_op()) << ' '
         << to_string(c.rhs_data());
      return;
    case Cond::Kind::Not:
      os << "not ";
      render_at(os, c.arg(), kNot);
      return;
    case Cond::Kind::Forall:
    case Cond::Kind::Exists:
      os << (c.kind() == Cond::Kind::Forall ? "forall " : "exists ") << c.var()
         << ". ";
      render_at(os, c.arg(), kQuant);
      return;
    case Cond::Kind::And:
    case Cond::Kind::Or: {
      // Left-associative chains; a right operand of equal level gets
      // parentheses so that the tree shape survives a round trip.
      const int l = level(c);
      render_at(os, c.lhs(), l);
      os << (c.kind() == Cond::Kind::And ? " and " : " or ");
      render_at(os, c.rhs(), l + 1);
      return;
    }
    case Cond::Kind::Implies:
    case Cond::Kind::Iff: {
      // Right-associative.
      const int l = level(c);
      render_at(os, c.lhs(), l + 1);
      os << (c.kind() == Cond::Kind::Implies ? " -> " : " <-> ");
      render_at(os, c.rhs(), l);
      return;
    }
  }
}

}  // namespace

void check_closed_data(const Cond& c) {
  std::vector<std::string> scope;
  check_bound(c, scope);
}

std::string to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

std::string to_string(const Cond& c) {
  std::ostringstream os;
  render(os, c, kQuant);
  return os.str();
}

const std::vector<bool>& CondTable::extension(const Cond& c) {
  auto it = memo_.find(c);
  if (it != memo_.end()) return it->second;
  std::vector<bool> ext(maps_.size());
  for (std::size_t i = 0; i < maps_.size(); ++i)
    ext[i] = eval_cond(c, maps_[i], carrier_);
  return memo_.emplace(c, std::move(ext)).first->second;
}

bool CondTable::satisfiable(const Cond& c) {
  if (c.is_true()) return !maps_.empty();
  if (c.is_false()) return false;
  const auto& e = extension(c);
  return std::find(e.begin(), e.end(), true) != e.end();
}

bool CondTable::valid(const Cond& c) {
  if (c.is_true()) return true;
  const auto& e = extension(c);
  return std::find(e.begin(), e.end(), false) == e.end();
}

}  // namespace deacp
