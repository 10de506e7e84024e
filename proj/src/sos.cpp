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

#include "deacp/sos.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "deacp/errors.hpp"

namespace deacp {

namespace {

constexpr int kMaxUnfold = 256;

Action eval_label(const Action& a, const EvalMap& m, const Carrier& carrier) {
  switch (a.kind()) {
    case Action::Kind::Basic:
    case Action::Kind::Tau: return a;
    case Action::Kind::Param: {
      std::vector<Data> args;
      for (const auto& e : a.args()) args.push_back(Data::literal(eval_data(e, m, carrier)));
      return Action::param(a.name(), std::move(args));
    }
    case Action::Kind::Assign:
      return Action::assign(a.name(), Data::literal(eval_data(a.value(), m, carrier)));
  }
  return a;
}

bool data_agree(const Action& a, const Action& b, const EvalMap& sigma, const Carrier& carrier) {
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (eval_data(a.args()[i], sigma, carrier) != eval_data(b.args()[i], sigma, carrier))
      return false;
  return true;
}

// Synchronised label, if the two actions communicate under sigma.
std::optional<Action> synchronise(const Action& a, const Action& b, const EvalMap& sigma,
                                  const Signature& sig) {
  auto c = sig.communicate(a, b);
  if (!c) return std::nullopt;
  if (a.kind() == Action::Kind::Basic) return Action::basic(*c);
  if (!data_agree(a, b, sigma, sig.carrier)) return std::nullopt;
  return Action::param(*c, a.args());
}

void steps(const Proc& t, const EvalMap& sigma, const Signature& sig, int depth,
           std::vector<Step>& out);

bool term(const Proc& t, const EvalMap& sigma, const Signature& sig, int depth) {
  switch (t.kind()) {
    case Proc::Kind::Epsilon: return true;
    case Proc::Kind::Act:
    case Proc::Kind::Delta:
    case Proc::Kind::LeftMerge:
    case Proc::Kind::CommMerge: return false;
    case Proc::Kind::Alt:
      return term(t.lhs(), sigma, sig, depth) || term(t.rhs(), sigma, sig, depth);
    case Proc::Kind::Seq:
    case Proc::Kind::Par:
      return term(t.lhs(), sigma, sig, depth) && term(t.rhs(), sigma, sig, depth);
    case Proc::Kind::Encap:
    case Proc::Kind::Abstr: return term(t.arg(), sigma, sig, depth);
    case Proc::Kind::Guard:
      return eval_cond(t.cond(), sigma, sig.carrier) && term(t.arg(), sigma, sig, depth);
    case Proc::Kind::Eval: return term(t.arg(), t.map(), sig, depth);
    case Proc::Kind::RecConst:
      if (depth > kMaxUnfold)
        throw Error(ErrorKind::Guardedness, "unguarded recursion while unfolding " + t.name());
      return term(close_over(t.spec()->rhs(t.name()), t.spec()), sigma, sig, depth + 1);
    case Proc::Kind::RecVar:
      throw Error(ErrorKind::Shape, "free recursion variable " + t.name());
  }
  return false;
}

void steps(const Proc& t, const EvalMap& sigma, const Signature& sig, int depth,
           std::vector<Step>& out) {
  switch (t.kind()) {
    case Proc::Kind::Act: out.push_back({t.action(), Proc::epsilon()}); return;
    case Proc::Kind::Delta:
    case Proc::Kind::Epsilon: return;
    case Proc::Kind::Alt:
      steps(t.lhs(), sigma, sig, depth, out);
      steps(t.rhs(), sigma, sig, depth, out);
      return;
    case Proc::Kind::Seq: {
      std::vector<Step> left;
      steps(t.lhs(), sigma, sig, depth, left);
      for (auto& s : left) out.push_back({s.action, mk_seq(s.target, t.rhs())});
      if (term(t.lhs(), sigma, sig, depth)) steps(t.rhs(), sigma, sig, depth, out);
      return;
    }
    case Proc::Kind::Par:
    case Proc::Kind::LeftMerge:
    case Proc::Kind::CommMerge: {
      std::vector<Step> left, right;
      steps(t.lhs(), sigma, sig, depth, left);
      if (!t.is(Proc::Kind::LeftMerge)) steps(t.rhs(), sigma, sig, depth, right);
      if (!t.is(Proc::Kind::CommMerge)) {
        for (auto& s : left) out.push_back({s.action, mk_par(s.target, t.rhs())});
      }
      if (t.is(Proc::Kind::Par)) {
        for (auto& s : right) out.push_back({s.action, mk_par(t.lhs(), s.target)});
      }
      if (!t.is(Proc::Kind::LeftMerge)) {
        for (auto& l : left)
          for (auto& r : right)
            if (auto c = synchronise(l.action, r.action, sigma, sig))
              out.push_back({*c, mk_par(l.target, r.target)});
      }
      return;
    }
    case Proc::Kind::Encap: {
      std::vector<Step> inner;
      steps(t.arg(), sigma, sig, depth, inner);
      for (auto& s : inner)
        if (!t.actions().contains(s.action))
          out.push_back({s.action, mk_encap(t.actions(), s.target)});
      return;
    }
    case Proc::Kind::Abstr: {
      std::vector<Step> inner;
      steps(t.arg(), sigma, sig, depth, inner);
      for (auto& s : inner)
        out.push_back({t.actions().contains(s.action) ? Action::tau() : s.action,
                       mk_abstr(t.actions(), s.target)});
      return;
    }
    case Proc::Kind::Guard:
      if (eval_cond(t.cond(), sigma, sig.carrier)) steps(t.arg(), sigma, sig, depth, out);
      return;
    case Proc::Kind::Eval: {
      std::vector<Step> inner;
      steps(t.arg(), t.map(), sig, depth, inner);
      for (auto& s : inner) {
        Action a = eval_label(s.action, t.map(), sig.carrier);
        EvalMap m = a.kind() == Action::Kind::Assign
                        ? update_map(t.map(), a.name(), a.value().value())
                        : t.map();
        out.push_back({std::move(a), mk_eval(m, s.target)});
      }
      return;
    }
    case Proc::Kind::RecConst:
      if (depth > kMaxUnfold)
        throw Error(ErrorKind::Guardedness, "unguarded recursion while unfolding " + t.name());
      steps(close_over(t.spec()->rhs(t.name()), t.spec()), sigma, sig, depth + 1, out);
      return;
    case Proc::Kind::RecVar:
      throw Error(ErrorKind::Shape, "free recursion variable " + t.name());
  }
}

}  // namespace

std::vector<Step> step(const Proc& t, const EvalMap& sigma, const Signature& sig) {
  std::vector<Step> out;
  steps(t, sigma, sig, 0, out);
  return out;
}

bool terminates(const Proc& t, const EvalMap& sigma, const Signature& sig) {
  return term(t, sigma, sig, 0);
}

[[noreturn]] void throw_exploration_limit(std::size_t bound, std::size_t states,
                                          std::size_t transitions) {
  throw Error(ErrorKind::ExplorationLimit,
              "state bound " + std::to_string(bound) + " exceeded after exploring " +
                  std::to_string(states) + " states and " + std::to_string(transitions) +
                  " transitions");
}

std::size_t state_bound_from_env(std::size_t fallback) {
  if (const char* s = std::getenv("DEACP_STATE_BOUND")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

SigmaLts build_lts(const Proc& t, const FlexVarDecl& decl, const Signature& sig) {
  SigmaLts lts;
  lts.decl = decl;
  lts.maps = enumerate_maps(decl, sig.carrier, sig.limits.enumeration);
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
    for (std::size_t m = 0; m < lts.maps.size(); ++m) {
      if (terminates(state, lts.maps[m], sig)) lts.terminating.push_back({s, m});
      std::set<std::pair<Action, std::size_t>> seen;
      for (auto& st : step(state, lts.maps[m], sig)) {
        std::size_t to = intern(st.target);
        if (seen.emplace(st.action, to).second)
          lts.transitions.push_back({s, m, st.action, to});
      }
    }
  }
  return lts;
}

SigmaLts build_lts(const Proc& t, const Signature& sig) {
  return build_lts(t, free_flexible(t, sig), sig);
}

bool isomorphic(const SigmaLts& a, const SigmaLts& b) {
  if (a.states.size() != b.states.size() || a.maps != b.maps ||
      a.transitions.size() != b.transitions.size() ||
      a.terminating.size() != b.terminating.size())
    return false;
  // Both systems are deterministic in their exploration order, so a
  // bijection is found by walking from the roots in lockstep.
  using Key = std::tuple<std::size_t, Action>;
  auto outgoing = [](const SigmaLts& l) {
    std::vector<std::map<Key, std::vector<std::size_t>>> out(l.states.size());
    for (const auto& tr : l.transitions) out[tr.from][{tr.map, tr.action}].push_back(tr.to);
    return out;
  };
  auto oa = outgoing(a), ob = outgoing(b);
  auto terms = [](const SigmaLts& l) {
    std::vector<std::set<std::size_t>> t(l.states.size());
    for (const auto& x : l.terminating) t[x.state].insert(x.map);
    return t;
  };
  auto ta = terms(a), tb = terms(b);
  std::vector<long> fwd(a.states.size(), -1), bwd(b.states.size(), -1);
  std::deque<std::pair<std::size_t, std::size_t>> work{{a.root, b.root}};
  fwd[a.root] = static_cast<long>(b.root);
  bwd[b.root] = static_cast<long>(a.root);
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    if (ta[x] != tb[y] || oa[x].size() != ob[y].size()) return false;
    for (const auto& [key, xs] : oa[x]) {
      auto it = ob[y].find(key);
      if (it == ob[y].end() || it->second.size() != xs.size()) return false;
      // Targets under one label are matched via the canonical state terms
      // when ambiguous; otherwise positionally.
      std::vector<std::size_t> ys = it->second;
      for (std::size_t xi : xs) {
        std::size_t yi;
        if (fwd[xi] >= 0) {
          yi = static_cast<std::size_t>(fwd[xi]);
          if (std::find(ys.begin(), ys.end(), yi) == ys.end()) return false;
        } else {
          auto pick = std::find_if(ys.begin(), ys.end(), [&](std::size_t c) {
            return bwd[c] < 0 && b.states[c] == a.states[xi];
          });
          if (pick == ys.end())
            pick = std::find_if(ys.begin(), ys.end(), [&](std::size_t c) { return bwd[c] < 0; });
          if (pick == ys.end()) return false;
          yi = *pick;
          fwd[xi] = static_cast<long>(yi);
          bwd[yi] = static_cast<long>(xi);
          work.emplace_back(xi, yi);
        }
        ys.erase(std::find(ys.begin(), ys.end(), yi));
      }
    }
  }
  for (long f : fwd)
    if (f < 0) return false;
  return true;
}

}  // namespace deacp
