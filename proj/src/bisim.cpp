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

#include "deacp/bisim.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "deacp/errors.hpp"
#include "deacp/sos.hpp"
#include "deacp/sos_cond.hpp"

namespace deacp {

ActionClass action_class(const Action& a, const EvalMap* sigma, const Carrier& carrier) {
  ActionClass c;
  c.kind = a.kind();
  auto value = [&](const Data& e) -> Value {
    if (e.is_ground()) return eval_data(e, EvalMap{}, carrier);
    if (!sigma)
      throw Error(ErrorKind::Declaration,
                  "action " + to_string(a) + " has open data and no evaluation map");
    return eval_data(e, *sigma, carrier);
  };
  switch (a.kind()) {
    case Action::Kind::Tau: break;
    case Action::Kind::Basic: c.name = a.name(); break;
    case Action::Kind::Param:
      c.name = a.name();
      for (const auto& e : a.args()) c.values.push_back(value(e));
      break;
    case Action::Kind::Assign:
      c.name = a.name();
      c.values.push_back(value(a.value()));
      break;
  }
  return c;
}

std::string to_string(const ActionClass& c) {
  switch (c.kind) {
    case Action::Kind::Tau: return "tau";
    case Action::Kind::Basic: return c.name;
    case Action::Kind::Param: {
      std::string s = c.name + "(";
      for (std::size_t i = 0; i < c.values.size(); ++i)
        s += (i ? ", " : "") + std::to_string(c.values[i]);
      return s + ")";
    }
    case Action::Kind::Assign: return c.name + " := " + std::to_string(c.values.front());
  }
  return "?";
}

std::vector<std::size_t> silent_closure(const SigmaLts& l, std::size_t s, std::size_t map) {
  std::vector<std::vector<std::size_t>> tau(l.states.size());
  for (const auto& t : l.transitions)
    if (t.map == map && t.action.is_tau()) tau[t.from].push_back(t.to);
  std::vector<char> seen(l.states.size(), 0);
  std::vector<std::size_t> out{s};
  seen[s] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t n : tau[out[i]])
      if (!seen[n]) {
        seen[n] = 1;
        out.push_back(n);
      }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

constexpr int kTau = 0;

class ClassTable {
 public:
  ClassTable() { ids_[ActionClass{}] = kTau; reps_.push_back(ActionClass{}); }
  int intern(const ActionClass& c) {
    auto [it, fresh] = ids_.emplace(c, static_cast<int>(reps_.size()));
    if (fresh) reps_.push_back(c);
    return it->second;
  }
  const ActionClass& rep(int id) const { return reps_[static_cast<std::size_t>(id)]; }

 private:
  std::map<ActionClass, int> ids_;
  std::vector<ActionClass> reps_;
};

struct Moves {
  std::size_t states = 0;
  std::size_t maps = 0;
  std::vector<std::vector<std::pair<int, std::size_t>>> out;  // (class, target) per (s, k)
  std::vector<std::vector<std::size_t>> tau;
  std::vector<std::vector<std::size_t>> closure;
  std::vector<char> term;

  std::size_t at(std::size_t s, std::size_t k) const { return s * maps + k; }
};

Moves prepare(const SigmaLts& l, ClassTable& classes, const Carrier& carrier) {
  Moves mv;
  mv.states = l.states.size();
  mv.maps = l.maps.size();
  const std::size_t cells = mv.states * mv.maps;
  mv.out.resize(cells);
  mv.tau.resize(cells);
  mv.closure.resize(cells);
  mv.term.assign(cells, 0);
  for (const auto& t : l.transitions) {
    int c = classes.intern(action_class(t.action, &l.maps[t.map], carrier));
    mv.out[mv.at(t.from, t.map)].emplace_back(c, t.to);
    if (c == kTau) mv.tau[mv.at(t.from, t.map)].push_back(t.to);
  }
  for (auto& o : mv.out) {
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
  }
  for (const auto& t : l.terminating) mv.term[mv.at(t.state, t.map)] = 1;
  std::vector<char> seen(mv.states, 0);
  for (std::size_t k = 0; k < mv.maps; ++k) {
    for (std::size_t s = 0; s < mv.states; ++s) {
      std::vector<std::size_t>& cl = mv.closure[mv.at(s, k)];
      cl.push_back(s);
      seen[s] = 1;
      for (std::size_t i = 0; i < cl.size(); ++i)
        for (std::size_t n : mv.tau[mv.at(cl[i], k)])
          if (!seen[n]) {
            seen[n] = 1;
            cl.push_back(n);
          }
      for (std::size_t x : cl) seen[x] = 0;
    }
  }
  return mv;
}

struct Reason {
  bool left_side = true;
  std::size_t map = 0;
  long obs = -1;  // index into the owner's move list, -1 for termination
  std::size_t order = 0;
};

// Pair refinement. `restricted` demands that every state on a matching
// silent path stays related to the fixed side.
class Refiner {
 public:
  Refiner(const Moves& a, const Moves& b, bool restricted)
      : a_(a), b_(b), restricted_(restricted), rel_(a.states * b.states, 1),
        reasons_(a.states * b.states) {}

  void run() {
    bool changed = true;
    std::size_t order = 0;
    while (changed) {
      changed = false;
      for (std::size_t p = 0; p < a_.states; ++p)
        for (std::size_t q = 0; q < b_.states; ++q) {
          if (!related(p, q)) continue;
          Reason r;
          if (!transfer(p, q, r)) {
            rel_[p * b_.states + q] = 0;
            r.order = ++order;
            reasons_[p * b_.states + q] = r;
            changed = true;
          }
        }
    }
  }

  bool related(std::size_t p, std::size_t q) const { return rel_[p * b_.states + q] != 0; }
  const Reason& reason(std::size_t p, std::size_t q) const { return reasons_[p * b_.states + q]; }

  // Root condition at (p, q); fills `r` on failure.
  bool root_ok(std::size_t p, std::size_t q, Reason& r) const {
    for (std::size_t k = 0; k < a_.maps; ++k) {
      if (a_.term[a_.at(p, k)] != b_.term[b_.at(q, k)]) {
        r = {a_.term[a_.at(p, k)] != 0, k, -1, 0};
        return false;
      }
      const auto& oa = a_.out[a_.at(p, k)];
      const auto& ob = b_.out[b_.at(q, k)];
      for (std::size_t i = 0; i < oa.size(); ++i) {
        bool ok = std::any_of(ob.begin(), ob.end(), [&](const auto& m) {
          return m.first == oa[i].first && related(oa[i].second, m.second);
        });
        if (!ok) {
          r = {true, k, static_cast<long>(i), 0};
          return false;
        }
      }
      for (std::size_t i = 0; i < ob.size(); ++i) {
        bool ok = std::any_of(oa.begin(), oa.end(), [&](const auto& m) {
          return m.first == ob[i].first && related(m.second, ob[i].second);
        });
        if (!ok) {
          r = {false, k, static_cast<long>(i), 0};
          return false;
        }
      }
    }
    return true;
  }

  std::vector<StatePair> relation() const {
    std::vector<StatePair> out;
    for (std::size_t p = 0; p < a_.states; ++p)
      for (std::size_t q = 0; q < b_.states; ++q)
        if (related(p, q)) out.emplace_back(p, q);
    return out;
  }

 private:
  // Candidate states t* with fixed ~ t* reachable silently from `from`.
  std::vector<std::size_t> reach(const Moves& m, std::size_t fixed, std::size_t from,
                                 std::size_t k, bool fixed_left) const {
    auto rel = [&](std::size_t x) {
      return fixed_left ? related(fixed, x) : related(x, fixed);
    };
    std::vector<std::size_t> out;
    if (!restricted_) {
      for (std::size_t x : m.closure[m.at(from, k)])
        if (rel(x)) out.push_back(x);
      return out;
    }
    std::set<std::size_t> seen{from};
    out.push_back(from);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t n : m.tau[m.at(out[i], k)])
        if (rel(n) && seen.insert(n).second) out.push_back(n);
    return out;
  }

  bool side_ok(const Moves& own, const Moves& other, std::size_t p, std::size_t q, bool left,
               Reason& r) const {
    auto rel = [&](std::size_t x, std::size_t y) { return left ? related(x, y) : related(y, x); };
    for (std::size_t k = 0; k < own.maps; ++k) {
      const bool needs_term = own.term[own.at(p, k)] != 0;
      const auto& moves = own.out[own.at(p, k)];
      if (!needs_term && moves.empty()) continue;
      std::vector<std::size_t> cands = reach(other, p, q, k, left);
      if (needs_term && std::none_of(cands.begin(), cands.end(), [&](std::size_t x) {
            return other.term[other.at(x, k)] != 0;
          })) {
        r = {left, k, -1, 0};
        return false;
      }
      for (std::size_t i = 0; i < moves.size(); ++i) {
        const auto [c, p2] = moves[i];
        bool ok = false;
        for (std::size_t x : cands) {
          if (c == kTau && rel(p2, x)) {
            ok = true;
            break;
          }
          for (const auto& [c2, q2] : other.out[other.at(x, k)])
            if (c2 == c && rel(p2, q2)) {
              ok = true;
              break;
            }
          if (ok) break;
        }
        if (!ok) {
          r = {left, k, static_cast<long>(i), 0};
          return false;
        }
      }
    }
    return true;
  }

  bool transfer(std::size_t p, std::size_t q, Reason& r) const {
    return side_ok(a_, b_, p, q, true, r) && side_ok(b_, a_, q, p, false, r);
  }

  const Moves& a_;
  const Moves& b_;
  bool restricted_;
  std::vector<char> rel_;
  std::vector<Reason> reasons_;
};

void describe(Counterexample& cx, const ClassTable& classes, const std::vector<EvalMap>& maps) {
  std::string side = cx.left_side ? "left" : "right";
  std::string where = "state pair (" + std::to_string(cx.pair.first) + ", " +
                      std::to_string(cx.pair.second) + ") under " + to_string(maps[cx.map]);
  if (cx.action)
    cx.description = side + " side performs " + to_string(*cx.action) + " at " + where +
                     (cx.at_root ? ", which the other side cannot match in one step"
                                 : ", which the other side cannot match");
  else
    cx.description = side + " side can terminate at " + where +
                     (cx.at_root ? ", the other side cannot" : ", the other side cannot follow");
  (void)classes;
}

Counterexample build_counterexample(const Refiner& ref, const Moves& a, const Moves& b,
                                    const ClassTable& classes, std::size_t r1, std::size_t r2,
                                    const std::vector<EvalMap>& maps) {
  Counterexample cx;
  std::size_t p = r1, q = r2;
  while (true) {
    const Reason& r = ref.reason(p, q);
    cx.pair = {p, q};
    cx.left_side = r.left_side;
    cx.map = r.map;
    if (r.obs < 0) {
      cx.action.reset();
      break;
    }
    const Moves& own = r.left_side ? a : b;
    const Moves& other = r.left_side ? b : a;
    const std::size_t from = r.left_side ? p : q;
    const std::size_t to_other = r.left_side ? q : p;
    const auto [c, succ] = own.out[own.at(from, r.map)][static_cast<std::size_t>(r.obs)];
    cx.action = classes.rep(c);
    cx.target = succ;
    // Continue through a matching move whose successor pair fell earlier.
    std::optional<std::pair<std::size_t, std::string>> next;
    for (const auto& [c2, t2] : other.out[other.at(to_other, r.map)]) {
      if (c2 != c) continue;
      std::size_t np = r.left_side ? succ : t2, nq = r.left_side ? t2 : succ;
      if (!ref.related(np, nq) && ref.reason(np, nq).order < r.order) {
        next = std::make_pair(t2, to_string(classes.rep(c2)));
        break;
      }
    }
    if (!next) break;
    Counterexample::Move mv;
    mv.map = r.map;
    mv.left_action = to_string(classes.rep(c));
    mv.right_action = next->second;
    if (!r.left_side) std::swap(mv.left_action, mv.right_action);
    p = r.left_side ? succ : next->first;
    q = r.left_side ? next->first : succ;
    mv.reached = {p, q};
    cx.trace.push_back(mv);
  }
  describe(cx, classes, maps);
  return cx;
}

BisimResult decide(const SigmaLts& l1, const SigmaLts& l2, const Carrier& carrier,
                   bool restricted) {
  if (l1.maps != l2.maps)
    throw Error(ErrorKind::Usage, "transition systems were built over different variables");
  ClassTable classes;
  Moves a = prepare(l1, classes, carrier);
  Moves b = prepare(l2, classes, carrier);
  Refiner ref(a, b, restricted);
  ref.run();
  BisimResult res;
  if (!ref.related(l1.root, l2.root)) {
    res.counterexample = build_counterexample(ref, a, b, classes, l1.root, l2.root, l1.maps);
    return res;
  }
  Reason r;
  if (!ref.root_ok(l1.root, l2.root, r)) {
    Counterexample cx;
    cx.pair = {l1.root, l2.root};
    cx.at_root = true;
    cx.left_side = r.left_side;
    cx.map = r.map;
    if (r.obs >= 0) {
      const Moves& own = r.left_side ? a : b;
      const auto [c, succ] =
          own.out[own.at(r.left_side ? l1.root : l2.root, r.map)][static_cast<std::size_t>(r.obs)];
      cx.action = classes.rep(c);
      cx.target = succ;
    }
    describe(cx, classes, l1.maps);
    res.counterexample = cx;
    return res;
  }
  res.equivalent = true;
  res.relation = ref.relation();
  return res;
}

SigmaLts over_decl(const Proc& t, const FlexVarDecl& decl, const Signature& sig) {
  return build_lts(t, decl, sig);
}

}  // namespace

BisimResult rooted_branching_bisim(const SigmaLts& l1, const SigmaLts& l2,
                                   const Carrier& carrier) {
  return decide(l1, l2, carrier, false);
}

BisimResult rooted_ab_bisim(const CondLts& c1, const CondLts& c2, const Signature& sig) {
  if (!(c1.decl == c2.decl))
    throw Error(ErrorKind::Usage, "transition systems were built over different variables");
  return decide(expand_to_sigma(c1, sig), expand_to_sigma(c2, sig), sig.carrier, true);
}

bool verify_witness(const SigmaLts& l1, const SigmaLts& l2, const std::vector<StatePair>& rel,
                    const Carrier& carrier, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (l1.maps != l2.maps) return fail("different map lists");
  std::set<StatePair> in(rel.begin(), rel.end());
  if (!in.count({l1.root, l2.root})) return fail("root pair missing");
  const std::size_t maps = l1.maps.size();
  auto same = [&](const Action& x, const Action& y, std::size_t k) {
    return action_class(x, &l1.maps[k], carrier) == action_class(y, &l1.maps[k], carrier);
  };
  auto moves = [&](const SigmaLts& l, std::size_t s, std::size_t k) {
    std::vector<const SigmaLts::Transition*> out;
    for (const auto& t : l.transitions)
      if (t.from == s && t.map == k) out.push_back(&t);
    return out;
  };
  auto terminates_at = [&](const SigmaLts& l, std::size_t s, std::size_t k) {
    return std::any_of(l.terminating.begin(), l.terminating.end(),
                       [&](const auto& t) { return t.state == s && t.map == k; });
  };
  auto check = [&](const SigmaLts& own, const SigmaLts& other, std::size_t p, std::size_t q,
                   bool left) -> std::string {
    auto r = [&](std::size_t x, std::size_t y) {
      return left ? in.count({x, y}) > 0 : in.count({y, x}) > 0;
    };
    for (std::size_t k = 0; k < maps; ++k) {
      std::vector<std::size_t> cl = silent_closure(other, q, k);
      if (terminates_at(own, p, k) &&
          std::none_of(cl.begin(), cl.end(),
                       [&](std::size_t x) { return r(p, x) && terminates_at(other, x, k); }))
        return "termination unmatched";
      for (const auto* t : moves(own, p, k)) {
        bool ok = false;
        for (std::size_t x : cl) {
          if (!r(p, x)) continue;
          if (t->action.is_tau() && r(t->to, x)) ok = true;
          for (const auto* u : moves(other, x, k))
            if (same(t->action, u->action, k) && r(t->to, u->to)) ok = true;
          if (ok) break;
        }
        if (!ok) return "transition " + to_string(t->action) + " unmatched";
      }
    }
    return "";
  };
  for (const auto& [p, q] : rel) {
    if (p >= l1.states.size() || q >= l2.states.size()) return fail("pair out of range");
    std::string e = check(l1, l2, p, q, true);
    if (e.empty()) e = check(l2, l1, q, p, false);
    if (!e.empty())
      return fail("pair (" + std::to_string(p) + ", " + std::to_string(q) + "): " + e);
  }
  for (std::size_t k = 0; k < maps; ++k) {
    if (terminates_at(l1, l1.root, k) != terminates_at(l2, l2.root, k))
      return fail("root termination differs");
    for (int side = 0; side < 2; ++side) {
      const SigmaLts& own = side ? l2 : l1;
      const SigmaLts& other = side ? l1 : l2;
      for (const auto* t : moves(own, own.root, k)) {
        bool ok = false;
        for (const auto* u : moves(other, other.root, k))
          if (same(t->action, u->action, k) &&
              in.count(side ? StatePair{u->to, t->to} : StatePair{t->to, u->to}))
            ok = true;
        if (!ok) return fail("root transition " + to_string(t->action) + " unmatched");
      }
    }
  }
  return true;
}

bool replay_counterexample(const SigmaLts& l1, const SigmaLts& l2, const Counterexample& cx,
                           const Carrier& carrier) {
  const SigmaLts& own = cx.left_side ? l1 : l2;
  const std::size_t s = cx.left_side ? cx.pair.first : cx.pair.second;
  if (cx.map >= own.maps.size() || s >= own.states.size()) return false;
  bool derivable = false;
  if (cx.action) {
    for (const auto& t : own.transitions)
      if (t.from == s && t.map == cx.map && t.to == cx.target &&
          action_class(t.action, &own.maps[t.map], carrier) == *cx.action)
        derivable = true;
  } else {
    for (const auto& t : own.terminating)
      if (t.state == s && t.map == cx.map) derivable = true;
  }
  if (!derivable) return false;
  BisimResult full = decide(l1, l2, carrier, false);
  if (cx.at_root) return !full.equivalent;
  ClassTable classes;
  Moves a = prepare(l1, classes, carrier);
  Moves b = prepare(l2, classes, carrier);
  Refiner ref(a, b, false);
  ref.run();
  return !ref.related(cx.pair.first, cx.pair.second);
}

bool signature_bisim(const SigmaLts& l1, const SigmaLts& l2, const Carrier& carrier) {
  if (l1.maps != l2.maps)
    throw Error(ErrorKind::Usage, "transition systems were built over different variables");
  ClassTable classes;
  Moves a = prepare(l1, classes, carrier);
  Moves b = prepare(l2, classes, carrier);
  for (const Moves* m : {&a, &b})
    for (const auto& t : m->tau)
      if (!t.empty()) throw Error(ErrorKind::Usage, "signature refinement needs tau-free input");
  const std::size_t n = a.states + b.states;
  const std::size_t maps = a.maps;
  auto moves_of = [&](std::size_t s, std::size_t k) -> const std::vector<std::pair<int, std::size_t>>& {
    return s < a.states ? a.out[a.at(s, k)] : b.out[b.at(s - a.states, k)];
  };
  auto offset = [&](std::size_t s) { return s < a.states ? 0 : a.states; };
  auto term_of = [&](std::size_t s, std::size_t k) {
    return s < a.states ? a.term[a.at(s, k)] : b.term[b.at(s - a.states, k)];
  };
  std::vector<std::size_t> block(n, 0);
  std::size_t count = 1;
  while (true) {
    using Sig = std::pair<std::size_t, std::vector<std::tuple<std::size_t, int, std::size_t>>>;
    std::map<std::pair<std::vector<char>, Sig>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<char> term(maps);
      Sig sig;
      sig.first = block[s];
      for (std::size_t k = 0; k < maps; ++k) {
        term[k] = term_of(s, k);
        for (const auto& [c, t] : moves_of(s, k))
          sig.second.emplace_back(k, c, block[t + offset(s)]);
      }
      std::sort(sig.second.begin(), sig.second.end());
      sig.second.erase(std::unique(sig.second.begin(), sig.second.end()), sig.second.end());
      auto key = std::make_pair(std::move(term), std::move(sig));
      auto it = ids.emplace(std::move(key), ids.size()).first;
      next[s] = it->second;
    }
    const std::size_t fresh = ids.size();
    block = std::move(next);
    if (fresh == count) break;
    count = fresh;
  }
  return block[l1.root] == block[a.states + l2.root];
}

BisimResult compare_terms(const Proc& t1, const Proc& t2, const Signature& sig, SigmaLts* out1,
                          SigmaLts* out2) {
  FlexVarDecl decl = FlexVarDecl::unite(free_flexible(t1, sig), free_flexible(t2, sig));
  SigmaLts l1 = over_decl(t1, decl, sig);
  SigmaLts l2 = over_decl(t2, decl, sig);
  BisimResult r = rooted_branching_bisim(l1, l2, sig.carrier);
  if (out1) *out1 = std::move(l1);
  if (out2) *out2 = std::move(l2);
  return r;
}

BisimResult compare_terms_ab(const Proc& t1, const Proc& t2, const Signature& sig) {
  FlexVarDecl decl = FlexVarDecl::unite(free_flexible(t1, sig), free_flexible(t2, sig));
  return rooted_ab_bisim(build_cond_lts(t1, decl, sig), build_cond_lts(t2, decl, sig), sig);
}

}  // namespace deacp
