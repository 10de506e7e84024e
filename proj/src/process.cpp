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

#include "deacp/process.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <unordered_set>

#include "deacp/errors.hpp"

namespace deacp {

class ProcNode {
 public:
  Proc::Kind kind = Proc::Kind::Delta;
  std::optional<Action> act;
  std::vector<Proc> children;
  ActionSet set;
  std::optional<Cond> cond;
  EvalMap map;
  std::string name;
  RecSpecPtr spec;
  std::size_t hash = 0;

  static Proc make(std::shared_ptr<ProcNode> n) {
    std::size_t h = 0x9a0c ^ (static_cast<std::size_t>(n->kind) * 0x9e3779b9);
    if (n->act) h = hash_combine(h, n->act->hash());
    for (const auto& c : n->children) h = hash_combine(h, c.hash());
    if (!n->set.empty()) h = hash_combine(h, n->set.hash());
    if (n->cond) h = hash_combine(h, n->cond->hash());
    if (!n->map.empty()) h = hash_combine(h, n->map.hash());
    if (!n->name.empty()) h = hash_combine(h, std::hash<std::string>{}(n->name));
    if (n->spec) h = hash_combine(h, n->spec->hash());
    n->hash = h;
    return Proc(std::move(n));
  }
};

namespace {

std::shared_ptr<ProcNode> node(Proc::Kind k) {
  auto n = std::make_shared<ProcNode>();
  n->kind = k;
  return n;
}

Proc make_binary(Proc::Kind k, Proc p, Proc q) {
  auto n = node(k);
  n->children = {std::move(p), std::move(q)};
  return ProcNode::make(std::move(n));
}

}  // namespace

Proc Proc::action(Action a) {
  auto n = node(Kind::Act);
  n->act = std::move(a);
  return ProcNode::make(std::move(n));
}

Proc Proc::delta() {
  static const Proc d = ProcNode::make(node(Kind::Delta));
  return d;
}

Proc Proc::epsilon() {
  static const Proc e = ProcNode::make(node(Kind::Epsilon));
  return e;
}

Proc Proc::alt(Proc p, Proc q) { return make_binary(Kind::Alt, std::move(p), std::move(q)); }
Proc Proc::seq(Proc p, Proc q) { return make_binary(Kind::Seq, std::move(p), std::move(q)); }
Proc Proc::par(Proc p, Proc q) { return make_binary(Kind::Par, std::move(p), std::move(q)); }
Proc Proc::leftmerge(Proc p, Proc q) {
  return make_binary(Kind::LeftMerge, std::move(p), std::move(q));
}
Proc Proc::commmerge(Proc p, Proc q) {
  return make_binary(Kind::CommMerge, std::move(p), std::move(q));
}

Proc Proc::binary(Kind k, Proc p, Proc q) {
  switch (k) {
    case Kind::Alt:
    case Kind::Seq:
    case Kind::Par:
    case Kind::LeftMerge:
    case Kind::CommMerge: return make_binary(k, std::move(p), std::move(q));
    default: throw Error(ErrorKind::Usage, "not a binary operator");
  }
}

Proc Proc::encap(ActionSet h, Proc p) {
  auto n = node(Kind::Encap);
  n->set = std::move(h);
  n->children = {std::move(p)};
  return ProcNode::make(std::move(n));
}

Proc Proc::abstr(ActionSet i, Proc p) {
  auto n = node(Kind::Abstr);
  n->set = std::move(i);
  n->children = {std::move(p)};
  return ProcNode::make(std::move(n));
}

Proc Proc::guard(Cond c, Proc p) {
  auto n = node(Kind::Guard);
  n->cond = std::move(c);
  n->children = {std::move(p)};
  return ProcNode::make(std::move(n));
}

Proc Proc::eval(EvalMap sigma, Proc p) {
  auto n = node(Kind::Eval);
  n->map = std::move(sigma);
  n->children = {std::move(p)};
  return ProcNode::make(std::move(n));
}

Proc Proc::recvar(std::string name) {
  auto n = node(Kind::RecVar);
  n->name = std::move(name);
  return ProcNode::make(std::move(n));
}

Proc Proc::recconst(std::string name, RecSpecPtr spec) {
  if (!spec || !spec->find(name))
    throw Error(ErrorKind::Declaration,
                "recursion variable '" + name + "' is not defined by its specification");
  auto n = node(Kind::RecConst);
  n->name = std::move(name);
  n->spec = std::move(spec);
  return ProcNode::make(std::move(n));
}

Proc::Kind Proc::kind() const { return node_->kind; }
const Action& Proc::action() const { return *node_->act; }
const Proc& Proc::lhs() const { return node_->children[0]; }
const Proc& Proc::rhs() const { return node_->children[1]; }
const Proc& Proc::arg() const { return node_->children[0]; }
const ActionSet& Proc::actions() const { return node_->set; }
const Cond& Proc::cond() const { return *node_->cond; }
const EvalMap& Proc::map() const { return node_->map; }
const std::string& Proc::name() const { return node_->name; }
const RecSpecPtr& Proc::spec() const { return node_->spec; }
std::size_t Proc::child_count() const { return node_->children.size(); }
const Proc& Proc::child(std::size_t i) const { return node_->children.at(i); }
std::size_t Proc::hash() const { return node_->hash; }

bool Proc::is_binary() const {
  switch (kind()) {
    case Kind::Alt:
    case Kind::Seq:
    case Kind::Par:
    case Kind::LeftMerge:
    case Kind::CommMerge: return true;
    default: return false;
  }
}

Proc Proc::with_children(std::vector<Proc> children) const {
  if (children == node_->children) return *this;
  auto n = std::make_shared<ProcNode>(*node_);
  n->children = std::move(children);
  return ProcNode::make(std::move(n));
}

bool Proc::operator==(const Proc& o) const {
  if (node_ == o.node_) return true;
  const ProcNode& a = *node_;
  const ProcNode& b = *o.node_;
  if (a.hash != b.hash || a.kind != b.kind) return false;
  if (a.act != b.act || a.cond != b.cond || a.name != b.name || !(a.map == b.map) ||
      !(a.set == b.set))
    return false;
  if (a.spec != b.spec && !(*a.spec == *b.spec)) return false;
  return a.children == b.children;
}

namespace {

template <typename T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int compare(const Proc& a, const Proc& b);

int compare_spec(const RecSpecPtr& a, const RecSpecPtr& b) {
  if (a == b) return 0;
  const auto& ea = a->equations;
  const auto& eb = b->equations;
  if (ea.size() != eb.size()) return ea.size() < eb.size() ? -1 : 1;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (int c = cmp3(ea[i].first, eb[i].first)) return c;
    if (int c = compare(ea[i].second, eb[i].second)) return c;
  }
  return 0;
}

int compare(const Proc& a, const Proc& b) {
  if (a == b) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Proc::Kind::Act: return cmp3(a.action(), b.action());
    case Proc::Kind::Encap:
    case Proc::Kind::Abstr:
      if (int c = cmp3(a.actions(), b.actions())) return c;
      break;
    case Proc::Kind::Guard:
      if (int c = cmp3(a.cond(), b.cond())) return c;
      break;
    case Proc::Kind::Eval:
      if (int c = cmp3(a.map(), b.map())) return c;
      break;
    case Proc::Kind::RecVar: return cmp3(a.name(), b.name());
    case Proc::Kind::RecConst:
      if (int c = cmp3(a.name(), b.name())) return c;
      return compare_spec(a.spec(), b.spec());
    default: break;
  }
  for (std::size_t i = 0; i < a.child_count(); ++i)
    if (int c = compare(a.child(i), b.child(i))) return c;
  return 0;
}

}  // namespace

bool Proc::operator<(const Proc& o) const { return compare(*this, o) < 0; }

RecSpec::RecSpec(std::vector<std::pair<std::string, Proc>> eqs)
    : equations(std::move(eqs)) {
  std::set<std::string> seen;
  std::size_t h = 0x5bec;
  for (const auto& [x, t] : equations) {
    if (!seen.insert(x).second)
      throw Error(ErrorKind::Declaration,
                  "recursion variable '" + x + "' has two equations");
    h = hash_combine(h, std::hash<std::string>{}(x));
    h = hash_combine(h, t.hash());
  }
  hash_ = h;
  for (const auto& [x, t] : equations)
    for (const auto& y : free_recvars(t))
      if (!seen.count(y))
        throw Error(ErrorKind::Declaration, "recursion variable '" + y +
                                                "' used in the equation for '" + x +
                                                "' has no equation");
}

const Proc* RecSpec::find(const std::string& var) const {
  for (const auto& [x, t] : equations)
    if (x == var) return &t;
  return nullptr;
}

const Proc& RecSpec::rhs(const std::string& var) const {
  if (const Proc* p = find(var)) return *p;
  throw Error(ErrorKind::Declaration, "unknown recursion variable '" + var + "'");
}

std::vector<std::string> RecSpec::vars() const {
  std::vector<std::string> out;
  for (const auto& [x, _] : equations) out.push_back(x);
  return out;
}

bool RecSpec::operator==(const RecSpec& o) const {
  return hash_ == o.hash_ && equations == o.equations;
}

Proc substitute_vars(const Proc& t, const std::map<std::string, Proc>& theta) {
  switch (t.kind()) {
    case Proc::Kind::RecVar: {
      auto it = theta.find(t.name());
      return it == theta.end() ? t : it->second;
    }
    case Proc::Kind::Act:
    case Proc::Kind::Delta:
    case Proc::Kind::Epsilon:
    case Proc::Kind::RecConst: return t;
    default: {
      std::vector<Proc> kids;
      kids.reserve(t.child_count());
      for (std::size_t i = 0; i < t.child_count(); ++i)
        kids.push_back(substitute_vars(t.child(i), theta));
      return t.with_children(std::move(kids));
    }
  }
}

Proc close_over(const Proc& t, const RecSpecPtr& spec) {
  std::map<std::string, Proc> theta;
  for (const auto& x : spec->vars()) theta.emplace(x, Proc::recconst(x, spec));
  return substitute_vars(t, theta);
}

bool is_summand(const Proc& t) {
  if (!t.is(Proc::Kind::Guard)) return false;
  const Proc& body = t.arg();
  if (body.is(Proc::Kind::Epsilon)) return true;
  return body.is(Proc::Kind::Seq) && body.lhs().is(Proc::Kind::Act) &&
         body.rhs().is(Proc::Kind::RecVar);
}

bool is_linear(const Proc& t) {
  if (t.is(Proc::Kind::Delta) || is_summand(t)) return true;
  return t.is(Proc::Kind::Alt) && is_linear(t.lhs()) && is_linear(t.rhs());
}

namespace {

void collect_summands(const Proc& t, std::vector<Proc>& out) {
  if (t.is(Proc::Kind::Delta)) return;
  if (t.is(Proc::Kind::Alt)) {
    collect_summands(t.lhs(), out);
    collect_summands(t.rhs(), out);
    return;
  }
  if (!is_summand(t)) throw Error(ErrorKind::Shape, "term is not linear");
  out.push_back(t);
}

}  // namespace

std::vector<Proc> summands(const Proc& t) {
  std::vector<Proc> out;
  collect_summands(t, out);
  return out;
}

std::vector<std::string> unguarded_cycle(const RecSpec& e) {
  std::map<std::string, std::vector<std::string>> edges;
  for (const auto& [x, t] : e.equations) {
    auto& out = edges[x];
    for (const auto& s : summands(t))
      if (!s.arg().is(Proc::Kind::Epsilon) && s.arg().lhs().action().is_tau())
        out.push_back(s.arg().rhs().name());
  }
  // Depth-first search for a back edge; colours 0 white, 1 grey, 2 black.
  std::map<std::string, int> colour;
  std::vector<std::string> stack;
  std::vector<std::string> cycle;
  std::function<bool(const std::string&)> dfs = [&](const std::string& x) {
    colour[x] = 1;
    stack.push_back(x);
    for (const auto& y : edges[x]) {
      if (colour[y] == 1) {
        auto it = std::find(stack.begin(), stack.end(), y);
        cycle.assign(it, stack.end());
        return true;
      }
      if (colour[y] == 0 && dfs(y)) return true;
    }
    stack.pop_back();
    colour[x] = 2;
    return false;
  };
  for (const auto& [x, _] : e.equations)
    if (colour[x] == 0 && dfs(x)) return cycle;
  return {};
}

bool is_guarded_linear_spec(const RecSpec& e) {
  for (const auto& [x, t] : e.equations)
    if (!is_linear(t)) return false;
  return unguarded_cycle(e).empty();
}

std::set<std::string> reachable(const RecSpec& e, const std::string& x) {
  e.rhs(x);
  std::set<std::string> seen{x};
  std::vector<std::string> work{x};
  while (!work.empty()) {
    const std::string cur = work.back();
    work.pop_back();
    for (const auto& y : free_recvars(e.rhs(cur)))
      if (seen.insert(y).second) work.push_back(y);
  }
  return seen;
}

namespace {

template <typename F>
void visit(const Proc& t, F&& f, std::unordered_set<const RecSpec*>& specs) {
  f(t);
  if (t.is(Proc::Kind::RecConst)) {
    if (specs.insert(t.spec().get()).second)
      for (const auto& [_, rhs] : t.spec()->equations) visit(rhs, f, specs);
    return;
  }
  for (std::size_t i = 0; i < t.child_count(); ++i) visit(t.child(i), f, specs);
}

template <typename F>
void visit(const Proc& t, F&& f) {
  std::unordered_set<const RecSpec*> specs;
  visit(t, f, specs);
}

void free_flex_rec(const Proc& t, std::set<std::string>& out,
                   std::unordered_set<const RecSpec*>& specs) {
  switch (t.kind()) {
    case Proc::Kind::Eval: return;
    case Proc::Kind::Act:
      for (const auto& d : t.action().args()) collect_flexible(d, out);
      return;
    case Proc::Kind::Guard:
      collect_flexible(t.cond(), out);
      free_flex_rec(t.arg(), out, specs);
      return;
    case Proc::Kind::RecConst:
      if (specs.insert(t.spec().get()).second)
        for (const auto& [_, rhs] : t.spec()->equations) free_flex_rec(rhs, out, specs);
      return;
    default:
      for (std::size_t i = 0; i < t.child_count(); ++i) free_flex_rec(t.child(i), out, specs);
  }
}

}  // namespace

FlexVarDecl free_flexible(const Proc& t, const Signature& sig) {
  std::set<std::string> found;
  std::unordered_set<const RecSpec*> specs;
  free_flex_rec(t, found, specs);
  FlexVarDecl out;
  for (const auto& n : sig.vars.names())
    if (found.count(n)) out.add(n);
  for (const auto& n : found)
    if (!sig.vars.contains(n))
      throw Error(ErrorKind::Declaration, "flexible variable '" + n + "' is not declared");
  return out;
}

std::set<std::string> occurring_flexible(const Proc& t) {
  std::set<std::string> out;
  visit(t, [&](const Proc& p) {
    if (p.is(Proc::Kind::Act)) {
      collect_flexible(p.action(), out);
      if (p.action().kind() == Action::Kind::Assign) out.insert(p.action().name());
    } else if (p.is(Proc::Kind::Guard)) {
      collect_flexible(p.cond(), out);
    }
  });
  return out;
}

std::set<Action> occurring_actions(const Proc& t) {
  std::set<Action> out;
  visit(t, [&](const Proc& p) {
    if (p.is(Proc::Kind::Act) && !p.action().is_tau()) out.insert(p.action());
  });
  return out;
}

void collect_conditions(const Proc& t, std::vector<Cond>& out) {
  visit(t, [&](const Proc& p) {
    if (p.is(Proc::Kind::Guard)) out.push_back(p.cond());
  });
}

std::set<std::string> free_recvars(const Proc& t) {
  std::set<std::string> out;
  std::function<void(const Proc&)> rec = [&](const Proc& p) {
    if (p.is(Proc::Kind::RecVar)) {
      out.insert(p.name());
      return;
    }
    if (p.is(Proc::Kind::RecConst)) return;
    for (std::size_t i = 0; i < p.child_count(); ++i) rec(p.child(i));
  };
  rec(t);
  return out;
}

bool has_abstraction(const Proc& t) {
  bool found = false;
  visit(t, [&](const Proc& p) { found = found || p.is(Proc::Kind::Abstr); });
  return found;
}

Classification classify(const Proc& t, const Signature& sig) {
  Classification c;
  c.abstraction_free = !has_abstraction(t);
  c.closed = free_recvars(t).empty();
  std::vector<Cond> conds;
  collect_conditions(t, conds);
  std::unordered_set<Cond> seen;
  for (const auto& phi : conds) {
    if (!seen.insert(phi).second) continue;
    if (!valid(phi, sig.vars, sig.carrier, sig.limits.enumeration) &&
        satisfiable(phi, sig.vars, sig.carrier, sig.limits.enumeration)) {
      c.bool_conditional = false;
      break;
    }
  }
  return c;
}

Proc mk_seq(const Proc& p, const Proc& q) {
  if (p.is(Proc::Kind::Epsilon)) return q;
  if (q.is(Proc::Kind::Epsilon)) return p;
  if (p.is(Proc::Kind::Delta)) return p;
  return Proc::seq(p, q);
}

Proc mk_par(const Proc& p, const Proc& q) {
  if (p.is(Proc::Kind::Epsilon)) return q;
  if (q.is(Proc::Kind::Epsilon)) return p;
  return Proc::par(p, q);
}

Proc mk_encap(const ActionSet& h, const Proc& p) {
  if (p.is(Proc::Kind::Epsilon) || p.is(Proc::Kind::Delta)) return p;
  return Proc::encap(h, p);
}

Proc mk_abstr(const ActionSet& i, const Proc& p) {
  if (p.is(Proc::Kind::Epsilon) || p.is(Proc::Kind::Delta)) return p;
  return Proc::abstr(i, p);
}

Proc mk_eval(const EvalMap& sigma, const Proc& p) {
  if (p.is(Proc::Kind::Epsilon) || p.is(Proc::Kind::Delta)) return p;
  return Proc::eval(sigma, p);
}

namespace {

RecSpecPtr canonical_spec(const RecSpecPtr& spec, const Carrier& carrier);

Proc fold_only(const Proc& t, const Carrier& carrier) {
  switch (t.kind()) {
    case Proc::Kind::Act: {
      Action a = fold(t.action(), carrier);
      return a == t.action() ? t : Proc::action(std::move(a));
    }
    case Proc::Kind::Guard: {
      Cond c = fold(t.cond(), carrier);
      Proc body = fold_only(t.arg(), carrier);
      if (c == t.cond() && body == t.arg()) return t;
      return Proc::guard(std::move(c), std::move(body));
    }
    case Proc::Kind::Delta:
    case Proc::Kind::Epsilon:
    case Proc::Kind::RecVar:
    case Proc::Kind::RecConst: return t;
    default: {
      std::vector<Proc> kids;
      for (std::size_t i = 0; i < t.child_count(); ++i)
        kids.push_back(fold_only(t.child(i), carrier));
      return t.with_children(std::move(kids));
    }
  }
}

RecSpecPtr canonical_spec(const RecSpecPtr& spec, const Carrier& carrier) {
  std::vector<std::pair<std::string, Proc>> eqs;
  bool changed = false;
  for (const auto& [x, rhs] : spec->equations) {
    eqs.emplace_back(x, fold_only(rhs, carrier));
    changed |= !(eqs.back().second == rhs);
  }
  return changed ? std::make_shared<const RecSpec>(std::move(eqs)) : spec;
}

}  // namespace

Proc canonical(const Proc& t, const Carrier& carrier) {
  switch (t.kind()) {
    case Proc::Kind::Act: return fold_only(t, carrier);
    case Proc::Kind::Guard: {
      Cond c = fold(t.cond(), carrier);
      Proc body = canonical(t.arg(), carrier);
      if (c == t.cond() && body == t.arg()) return t;
      return Proc::guard(std::move(c), std::move(body));
    }
    case Proc::Kind::Delta:
    case Proc::Kind::Epsilon:
    case Proc::Kind::RecVar: return t;
    case Proc::Kind::RecConst: {
      RecSpecPtr s = canonical_spec(t.spec(), carrier);
      return s == t.spec() ? t : Proc::recconst(t.name(), s);
    }
    case Proc::Kind::Seq: return mk_seq(canonical(t.lhs(), carrier), canonical(t.rhs(), carrier));
    case Proc::Kind::Par: return mk_par(canonical(t.lhs(), carrier), canonical(t.rhs(), carrier));
    case Proc::Kind::Encap: return mk_encap(t.actions(), canonical(t.arg(), carrier));
    case Proc::Kind::Abstr: return mk_abstr(t.actions(), canonical(t.arg(), carrier));
    case Proc::Kind::Eval: return mk_eval(t.map(), canonical(t.arg(), carrier));
    default: {
      std::vector<Proc> kids;
      for (std::size_t i = 0; i < t.child_count(); ++i)
        kids.push_back(canonical(t.child(i), carrier));
      return t.with_children(std::move(kids));
    }
  }
}

std::size_t term_size(const Proc& t) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < t.child_count(); ++i) n += term_size(t.child(i));
  return n;
}

std::size_t term_depth(const Proc& t) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < t.child_count(); ++i) d = std::max(d, term_depth(t.child(i)));
  return d + 1;
}

const Proc& subterm(const Proc& t, const Position& pos) {
  const Proc* cur = &t;
  for (std::size_t i : pos) {
    if (i >= cur->child_count()) throw Error(ErrorKind::Usage, "invalid term position");
    cur = &cur->child(i);
  }
  return *cur;
}

Proc replace_at(const Proc& t, const Position& pos, const Proc& repl) {
  if (pos.empty()) return repl;
  std::function<Proc(const Proc&, std::size_t)> rec = [&](const Proc& cur,
                                                           std::size_t depth) -> Proc {
    if (depth == pos.size()) return repl;
    if (pos[depth] >= cur.child_count())
      throw Error(ErrorKind::Usage, "invalid term position");
    std::vector<Proc> kids;
    for (std::size_t i = 0; i < cur.child_count(); ++i)
      kids.push_back(i == pos[depth] ? rec(cur.child(i), depth + 1) : cur.child(i));
    return cur.with_children(std::move(kids));
  };
  return rec(t, 0);
}

std::optional<Position> difference_position(const Proc& a, const Proc& b) {
  if (a == b) return std::nullopt;
  Position pos;
  const Proc* x = &a;
  const Proc* y = &b;
  while (true) {
    if (x->kind() != y->kind() || x->child_count() == 0 ||
        x->child_count() != y->child_count())
      return pos;
    // Non-child attributes must agree for the difference to lie below.
    if (x->with_children([&] {
          std::vector<Proc> k;
          for (std::size_t i = 0; i < y->child_count(); ++i) k.push_back(y->child(i));
          return k;
        }()) != *y)
      return pos;
    std::optional<std::size_t> diff;
    for (std::size_t i = 0; i < x->child_count(); ++i) {
      if (x->child(i) != y->child(i)) {
        if (diff) return pos;
        diff = i;
      }
    }
    pos.push_back(*diff);
    x = &x->child(*diff);
    y = &y->child(*diff);
  }
}

Proc alt_of(const std::vector<Proc>& terms) {
  if (terms.empty()) return Proc::delta();
  Proc out = terms.back();
  for (std::size_t i = terms.size() - 1; i-- > 0;) out = Proc::alt(terms[i], out);
  return out;
}

std::string to_string(Proc::Kind k) {
  switch (k) {
    case Proc::Kind::Act: return "action";
    case Proc::Kind::Delta: return "delta";
    case Proc::Kind::Epsilon: return "epsilon";
    case Proc::Kind::Alt: return "alt";
    case Proc::Kind::Seq: return "seq";
    case Proc::Kind::Par: return "par";
    case Proc::Kind::LeftMerge: return "leftmerge";
    case Proc::Kind::CommMerge: return "commmerge";
    case Proc::Kind::Encap: return "encap";
    case Proc::Kind::Abstr: return "abstr";
    case Proc::Kind::Guard: return "guard";
    case Proc::Kind::Eval: return "eval";
    case Proc::Kind::RecVar: return "recvar";
    case Proc::Kind::RecConst: return "recconst";
  }
  return "?";
}

}  // namespace deacp
