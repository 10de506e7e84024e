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

#include "deacp/sos_cond.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>

#include "deacp/errors.hpp"

namespace deacp {

namespace {

constexpr int kMaxUnfold = 256;

class CondSemantics {
 public:
  CondSemantics(const Signature& sig, CondTable& table) : sig_(sig), table_(table) {}

  // Normalised label, or nothing when unsatisfiable.
  std::optional<Cond> label(const Cond& c) {
    Cond n = canonical_conj(c);
    if (n.is_false()) return std::nullopt;
    if (n.is_true()) return n;
    if (!has_flexible(n)) {
      if (!eval_cond(n, EvalMap{}, sig_.carrier)) return std::nullopt;
      return Cond::truth();
    }
    if (!satisfiable_label(n)) return std::nullopt;
    return n;
  }

  std::optional<Cond> both(const Cond& a, const Cond& b) { return label(Cond::conj(a, b)); }

  // sigma(phi) for a label produced under an evaluation operator.
  std::optional<Cond> under(const EvalMap& m, const Cond& c) {
    Cond s = substitute(c, m);
    return eval_cond(s, EvalMap{}, sig_.carrier) ? std::optional<Cond>(Cond::truth())
                                                 : std::nullopt;
  }

  void terms(const Proc& t, int depth, std::vector<Cond>& out) {
    switch (t.kind()) {
      case Proc::Kind::Epsilon: out.push_back(Cond::truth()); return;
      case Proc::Kind::Act:
      case Proc::Kind::Delta:
      case Proc::Kind::LeftMerge:
      case Proc::Kind::CommMerge: return;
      case Proc::Kind::Alt:
        terms(t.lhs(), depth, out);
        terms(t.rhs(), depth, out);
        return;
      case Proc::Kind::Seq:
      case Proc::Kind::Par: {
        std::vector<Cond> l, r;
        terms(t.lhs(), depth, l);
        if (l.empty()) return;
        terms(t.rhs(), depth, r);
        for (const auto& a : l)
          for (const auto& b : r)
            if (auto c = both(a, b)) out.push_back(*c);
        return;
      }
      case Proc::Kind::Encap:
      case Proc::Kind::Abstr: terms(t.arg(), depth, out); return;
      case Proc::Kind::Guard: {
        std::vector<Cond> inner;
        terms(t.arg(), depth, inner);
        for (const auto& a : inner)
          if (auto c = both(a, t.cond())) out.push_back(*c);
        return;
      }
      case Proc::Kind::Eval: {
        std::vector<Cond> inner;
        terms(t.arg(), depth, inner);
        for (const auto& a : inner)
          if (auto c = under(t.map(), a)) out.push_back(*c);
        return;
      }
      case Proc::Kind::RecConst:
        check_depth(t, depth);
        terms(close_over(t.spec()->rhs(t.name()), t.spec()), depth + 1, out);
        return;
      case Proc::Kind::RecVar:
        throw Error(ErrorKind::Shape, "free recursion variable " + t.name());
    }
  }

  void steps(const Proc& t, int depth, std::vector<CondStep>& out) {
    switch (t.kind()) {
      case Proc::Kind::Act: out.push_back({Cond::truth(), t.action(), Proc::epsilon()}); return;
      case Proc::Kind::Delta:
      case Proc::Kind::Epsilon: return;
      case Proc::Kind::Alt:
        steps(t.lhs(), depth, out);
        steps(t.rhs(), depth, out);
        return;
      case Proc::Kind::Seq: {
        std::vector<CondStep> left;
        steps(t.lhs(), depth, left);
        for (auto& s : left) out.push_back({s.cond, s.action, mk_seq(s.target, t.rhs())});
        std::vector<Cond> done;
        terms(t.lhs(), depth, done);
        if (done.empty()) return;
        std::vector<CondStep> right;
        steps(t.rhs(), depth, right);
        for (const auto& phi : done)
          for (auto& s : right)
            if (auto c = both(phi, s.cond)) out.push_back({*c, s.action, s.target});
        return;
      }
      case Proc::Kind::Par:
      case Proc::Kind::LeftMerge:
      case Proc::Kind::CommMerge: {
        std::vector<CondStep> left, right;
        steps(t.lhs(), depth, left);
        if (!t.is(Proc::Kind::LeftMerge)) steps(t.rhs(), depth, right);
        if (!t.is(Proc::Kind::CommMerge))
          for (auto& s : left) out.push_back({s.cond, s.action, mk_par(s.target, t.rhs())});
        if (t.is(Proc::Kind::Par))
          for (auto& s : right) out.push_back({s.cond, s.action, mk_par(t.lhs(), s.target)});
        if (t.is(Proc::Kind::LeftMerge)) return;
        for (auto& l : left)
          for (auto& r : right) {
            auto name = sig_.communicate(l.action, r.action);
            if (!name) continue;
            Cond c = Cond::conj(l.cond, r.cond);
            Action a = Action::basic(*name);
            if (l.action.kind() == Action::Kind::Param) {
              for (std::size_t i = 0; i < l.action.args().size(); ++i)
                c = Cond::conj(c, Cond::cmp(CmpOp::Eq, l.action.args()[i], r.action.args()[i]));
              a = Action::param(*name, l.action.args());
            }
            if (auto n = label(c)) out.push_back({*n, a, mk_par(l.target, r.target)});
          }
        return;
      }
      case Proc::Kind::Encap: {
        std::vector<CondStep> inner;
        steps(t.arg(), depth, inner);
        for (auto& s : inner)
          if (!t.actions().contains(s.action))
            out.push_back({s.cond, s.action, mk_encap(t.actions(), s.target)});
        return;
      }
      case Proc::Kind::Abstr: {
        std::vector<CondStep> inner;
        steps(t.arg(), depth, inner);
        for (auto& s : inner)
          out.push_back({s.cond, t.actions().contains(s.action) ? Action::tau() : s.action,
                         mk_abstr(t.actions(), s.target)});
        return;
      }
      case Proc::Kind::Guard: {
        std::vector<CondStep> inner;
        steps(t.arg(), depth, inner);
        for (auto& s : inner)
          if (auto c = both(s.cond, t.cond())) out.push_back({*c, s.action, s.target});
        return;
      }
      case Proc::Kind::Eval: {
        std::vector<CondStep> inner;
        steps(t.arg(), depth, inner);
        const EvalMap& m = t.map();
        for (auto& s : inner) {
          auto c = under(m, s.cond);
          if (!c) continue;
          Action a = s.action;
          EvalMap next = m;
          if (a.kind() == Action::Kind::Param) {
            std::vector<Data> args;
            for (const auto& e : a.args()) args.push_back(Data::literal(eval_data(e, m, sig_.carrier)));
            a = Action::param(a.name(), std::move(args));
          } else if (a.kind() == Action::Kind::Assign) {
            Value v = eval_data(a.value(), m, sig_.carrier);
            a = Action::assign(a.name(), Data::literal(v));
            next = update_map(m, a.name(), v);
          }
          out.push_back({*c, std::move(a), mk_eval(next, s.target)});
        }
        return;
      }
      case Proc::Kind::RecConst:
        check_depth(t, depth);
        steps(close_over(t.spec()->rhs(t.name()), t.spec()), depth + 1, out);
        return;
      case Proc::Kind::RecVar:
        throw Error(ErrorKind::Shape, "free recursion variable " + t.name());
    }
  }

 private:
  // Labels under an evaluation operator may mention variables outside the
  // explored declaration; those are decided over their own variables.
  bool satisfiable_label(const Cond& c) {
    std::set<std::string> vars;
    collect_flexible(c, vars);
    const auto& maps = table_.maps();
    const bool covered = !maps.empty() && std::all_of(vars.begin(), vars.end(), [&](const auto& v) {
      return maps.front().defines(v);
    });
    if (covered) return table_.satisfiable(c);
    return satisfiable(c, sig_.vars, sig_.carrier, sig_.limits.enumeration);
  }

  static void check_depth(const Proc& t, int depth) {
    if (depth > kMaxUnfold)
      throw Error(ErrorKind::Guardedness, "unguarded recursion while unfolding " + t.name());
  }

  const Signature& sig_;
  CondTable& table_;
};

}  // namespace

std::vector<CondStep> step_cond(const Proc& t, const Signature& sig, CondTable& table) {
  CondSemantics sem(sig, table);
  std::vector<CondStep> out;
  sem.steps(t, 0, out);
  return out;
}

std::vector<Cond> terminates_cond(const Proc& t, const Signature& sig, CondTable& table) {
  CondSemantics sem(sig, table);
  std::vector<Cond> out;
  sem.terms(t, 0, out);
  return out;
}

CondLts build_cond_lts(const Proc& t, const FlexVarDecl& decl, const Signature& sig) {
  CondLts lts;
  lts.decl = decl;
  CondTable table(enumerate_maps(decl, sig.carrier, sig.limits.enumeration), sig.carrier);
  CondSemantics sem(sig, table);
  const std::size_t bound = sig.limits.states;
  std::unordered_map<Proc, std::size_t> index;
  auto intern = [&](const Proc& p) {
    auto [it, fresh] = index.emplace(p, lts.states.size());
    if (fresh) {
      if (lts.states.size() >= bound)
        throw_exploration_limit(bound, lts.states.size(), lts.transitions.size());
      lts.states.push_back(p);
    }
    return it->second;
  };
  lts.root = intern(canonical(t, sig.carrier));
  for (std::size_t s = 0; s < lts.states.size(); ++s) {
    const Proc state = lts.states[s];
    std::vector<Cond> done;
    sem.terms(state, 0, done);
    std::set<Cond> seen_term;
    for (auto& c : done)
      if (seen_term.insert(c).second) lts.terminating.push_back({s, c});
    std::vector<CondStep> out;
    sem.steps(state, 0, out);
    std::set<std::tuple<Cond, Action, std::size_t>> seen;
    for (auto& st : out) {
      std::size_t to = intern(st.target);
      if (seen.emplace(st.cond, st.action, to).second)
        lts.transitions.push_back({s, st.cond, st.action, to});
    }
  }
  return lts;
}

CondLts build_cond_lts(const Proc& t, const Signature& sig) {
  return build_cond_lts(t, free_flexible(t, sig), sig);
}

SigmaLts expand_to_sigma(const CondLts& c, const Signature& sig) {
  SigmaLts out;
  out.states = c.states;
  out.root = c.root;
  out.decl = c.decl;
  out.maps = enumerate_maps(c.decl, sig.carrier, sig.limits.enumeration);
  CondTable table(out.maps, sig.carrier);
  // Group by source then map, matching the order of the direct construction.
  std::vector<std::vector<std::size_t>> by_state(c.states.size()), term_by_state(c.states.size());
  for (std::size_t i = 0; i < c.transitions.size(); ++i) by_state[c.transitions[i].from].push_back(i);
  for (std::size_t i = 0; i < c.terminating.size(); ++i)
    term_by_state[c.terminating[i].state].push_back(i);
  for (std::size_t s = 0; s < c.states.size(); ++s) {
    for (std::size_t m = 0; m < out.maps.size(); ++m) {
      for (std::size_t i : term_by_state[s])
        if (table.extension(c.terminating[i].cond)[m]) {
          out.terminating.push_back({s, m});
          break;
        }
      std::set<std::pair<Action, std::size_t>> seen;
      for (std::size_t i : by_state[s]) {
        const auto& tr = c.transitions[i];
        if (table.extension(tr.cond)[m] && seen.emplace(tr.action, tr.to).second)
          out.transitions.push_back({s, m, tr.action, tr.to});
      }
    }
  }
  return out;
}

}  // namespace deacp
