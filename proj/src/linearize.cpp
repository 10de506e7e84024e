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

#include "deacp/linearize.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "deacp/errors.hpp"
#include "deacp/lts.hpp"

namespace deacp {

Proc make_summand(const Cond& guard, const std::optional<Action>& action,
                  const std::string& target) {
  if (!action) return Proc::guard(guard, Proc::epsilon());
  return Proc::guard(guard, Proc::seq(Proc::action(*action), Proc::recvar(target)));
}

namespace {

struct Sum {
  Cond guard;
  std::optional<Action> action;  // empty: termination summand
  std::size_t target = 0;

  bool operator==(const Sum& o) const {
    return guard == o.guard && action == o.action && target == o.target;
  }
};

struct Eq {
  std::vector<Sum> sums;
  Proc theta;
};

// Iterative Tarjan; component ids in completion order.
std::vector<int> components(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on(n, false);
  std::vector<std::size_t> stack;
  int counter = 0, ncomp = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (index[s] != -1) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{s, 0}};
    while (!call.empty()) {
      const std::size_t v = call.back().first;
      if (index[v] == -1) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = true;
      }
      if (call.back().second < adj[v].size()) {
        const std::size_t w = adj[v][call.back().second++];
        if (index[w] == -1)
          call.push_back({w, 0});
        else if (on[w])
          low[v] = std::min(low[v], index[w]);
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = false;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) {
        const std::size_t u = call.back().first;
        low[u] = std::min(low[u], low[v]);
      }
    }
  }
  return comp;
}

bool internal_move(const Sum& s, const ActionSet& hidden) {
  return s.action && s.guard.is_true() && (s.action->is_tau() || hidden.contains(*s.action));
}

Action evaluate_label(const Action& a, const EvalMap& m, const Carrier& carrier) {
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

// Index form of a linear specification.
struct IndexedSpec {
  std::vector<std::string> names;
  std::vector<std::vector<Sum>> sums;
  std::map<std::string, std::size_t> index;
};

IndexedSpec index_spec(const RecSpec& e) {
  IndexedSpec out;
  out.names = e.vars();
  for (std::size_t i = 0; i < out.names.size(); ++i) out.index[out.names[i]] = i;
  for (const auto& x : out.names) {
    std::vector<Sum> row;
    for (const auto& s : summands(e.rhs(x))) {
      if (s.arg().is(Proc::Kind::Epsilon)) {
        row.push_back({s.cond(), std::nullopt, 0});
      } else {
        auto it = out.index.find(s.arg().rhs().name());
        if (it == out.index.end())
          throw Error(ErrorKind::Declaration, "recursion variable " + s.arg().rhs().name() +
                                                  " has no equation");
        row.push_back({s.cond(), s.arg().lhs().action(), it->second});
      }
    }
    out.sums.push_back(std::move(row));
  }
  return out;
}

Proc summand_term(const IndexedSpec& ix, const Sum& s) {
  return make_summand(s.guard, s.action, s.action ? ix.names[s.target] : std::string());
}

class Builder {
 public:
  Builder(const Signature& sig, bool allow_hide) : sig_(sig), allow_hide_(allow_hide) {}

  std::size_t lin(const Proc& t);
  Linearization finish(std::size_t root);

 private:
  const Signature& sig_;
  bool allow_hide_;
  std::vector<Eq> eqs_;
  std::unordered_map<Proc, std::size_t> memo_;
  std::map<std::pair<const RecSpec*, std::string>, std::size_t> rec_memo_;
  std::unordered_map<Cond, Cond> guard_memo_;
  std::vector<CfarApplication> cfar_;
  std::optional<std::size_t> eps_;

  std::size_t add(Proc theta) {
    if (eqs_.size() >= sig_.limits.states)
      throw_exploration_limit(sig_.limits.states, eqs_.size(), 0);
    eqs_.push_back({{}, std::move(theta)});
    return eqs_.size() - 1;
  }

  Cond normalise(const Cond& c);
  Cond conj(const Cond& a, const Cond& b) { return conj_simplified(a, b); }
  void push(std::vector<Sum>& out, const Cond& g, const std::optional<Action>& a,
            std::size_t target);
  std::size_t epsilon_var();
  bool is_epsilon_var(std::size_t v) const;
  std::vector<std::size_t> reach(std::size_t root) const;

  std::size_t seq_copy(std::size_t a, std::size_t b, const Proc& q);
  std::size_t merge(const Proc& t, std::size_t a, std::size_t b);
  std::size_t encap_copy(const ActionSet& h, std::size_t a);
  std::size_t eval_copy(const EvalMap& sigma, std::size_t a);
  std::size_t rec_copy(const Proc& t);
  std::size_t hide(const ActionSet& hidden, std::size_t a);
  void replace_pure_tau(const std::vector<std::size_t>& vars, std::size_t root);
};

Cond Builder::normalise(const Cond& c) {
  auto it = guard_memo_.find(c);
  if (it != guard_memo_.end()) return it->second;
  Cond r = canonical_conj(c);
  if (!r.is_true() && !r.is_false()) {
    std::set<std::string> vs;
    collect_flexible(r, vs);
    FlexVarDecl decl(std::vector<std::string>(vs.begin(), vs.end()));
    if (valid(r, decl, sig_.carrier, sig_.limits.enumeration))
      r = Cond::truth();
    else if (!satisfiable(r, decl, sig_.carrier, sig_.limits.enumeration))
      r = Cond::falsity();
  }
  guard_memo_.emplace(c, r);
  return r;
}

void Builder::push(std::vector<Sum>& out, const Cond& g, const std::optional<Action>& a,
                   std::size_t target) {
  Sum s{normalise(g), a, a ? target : 0};
  if (s.guard.is_false()) return;
  if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
}

std::size_t Builder::epsilon_var() {
  if (!eps_) {
    eps_ = add(Proc::epsilon());
    eqs_[*eps_].sums.push_back({Cond::truth(), std::nullopt, 0});
  }
  return *eps_;
}

bool Builder::is_epsilon_var(std::size_t v) const {
  const auto& s = eqs_[v].sums;
  return s.size() == 1 && !s[0].action && s[0].guard.is_true();
}

std::vector<std::size_t> Builder::reach(std::size_t root) const {
  std::vector<std::size_t> order{root};
  std::set<std::size_t> seen{root};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& s : eqs_[order[i]].sums)
      if (s.action && seen.insert(s.target).second) order.push_back(s.target);
  return order;
}

std::size_t Builder::lin(const Proc& t) {
  auto it = memo_.find(t);
  if (it != memo_.end()) return it->second;
  std::size_t r = 0;
  switch (t.kind()) {
    case Proc::Kind::Act: {
      const std::size_t e = epsilon_var();
      r = add(t);
      eqs_[r].sums.push_back({Cond::truth(), t.action(), e});
      break;
    }
    case Proc::Kind::Delta: r = add(t); break;
    case Proc::Kind::Epsilon: r = epsilon_var(); break;
    case Proc::Kind::Alt: {
      const std::size_t a = lin(t.lhs()), b = lin(t.rhs());
      std::vector<Sum> out;
      for (const auto& s : eqs_[a].sums) push(out, s.guard, s.action, s.target);
      for (const auto& s : eqs_[b].sums) push(out, s.guard, s.action, s.target);
      r = add(t);
      eqs_[r].sums = std::move(out);
      break;
    }
    case Proc::Kind::Seq: r = seq_copy(lin(t.lhs()), lin(t.rhs()), t.rhs()); break;
    case Proc::Kind::Par:
    case Proc::Kind::LeftMerge:
    case Proc::Kind::CommMerge: {
      const std::size_t a = lin(t.lhs()), b = lin(t.rhs());
      r = merge(t, a, b);
      break;
    }
    case Proc::Kind::Encap: r = encap_copy(t.actions(), lin(t.arg())); break;
    case Proc::Kind::Abstr:
      if (!allow_hide_)
        throw Error(ErrorKind::Scope, "abstraction outside the bool-conditional fragment");
      r = hide(t.actions(), lin(t.arg()));
      break;
    case Proc::Kind::Guard: {
      const std::size_t a = lin(t.arg());
      std::vector<Sum> out;
      for (const auto& s : eqs_[a].sums) push(out, conj(t.cond(), s.guard), s.action, s.target);
      r = add(t);
      eqs_[r].sums = std::move(out);
      break;
    }
    case Proc::Kind::Eval: r = eval_copy(t.map(), lin(t.arg())); break;
    case Proc::Kind::RecConst: r = rec_copy(t); break;
    case Proc::Kind::RecVar:
      throw Error(ErrorKind::Shape, "free recursion variable " + t.name());
  }
  memo_.emplace(t, r);
  return r;
}

std::size_t Builder::seq_copy(std::size_t a, std::size_t b, const Proc& q) {
  std::map<std::size_t, std::size_t> copy;
  std::vector<std::size_t> work;
  auto get = [&](std::size_t y) {
    auto it = copy.find(y);
    if (it != copy.end()) return it->second;
    const std::size_t n = add(Proc::seq(eqs_[y].theta, q));
    copy.emplace(y, n);
    work.push_back(y);
    return n;
  };
  const std::size_t root = get(a);
  const std::vector<Sum> tail = eqs_[b].sums;
  while (!work.empty()) {
    const std::size_t y = work.back();
    work.pop_back();
    const std::vector<Sum> src = eqs_[y].sums;
    std::vector<Sum> out;
    for (const auto& s : src) {
      if (s.action)
        push(out, s.guard, s.action, get(s.target));
      else
        for (const auto& u : tail) push(out, conj(s.guard, u.guard), u.action, u.target);
    }
    eqs_[copy.at(y)].sums = std::move(out);
  }
  return root;
}

std::size_t Builder::merge(const Proc& t, std::size_t a, std::size_t b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pairs;
  std::vector<std::pair<std::size_t, std::size_t>> work;
  auto get = [&](std::size_t y, std::size_t z) {
    auto it = pairs.find({y, z});
    if (it != pairs.end()) return it->second;
    const std::size_t n = add(Proc::par(eqs_[y].theta, eqs_[z].theta));
    pairs.emplace(std::make_pair(y, z), n);
    work.emplace_back(y, z);
    return n;
  };
  auto moves = [&](std::size_t y, std::size_t z, bool left, bool right, bool comm, bool term) {
    const std::vector<Sum> ys = eqs_[y].sums, zs = eqs_[z].sums;
    std::vector<Sum> out;
    if (left)
      for (const auto& s : ys)
        if (s.action) push(out, s.guard, s.action, get(s.target, z));
    if (right)
      for (const auto& s : zs)
        if (s.action) push(out, s.guard, s.action, get(y, s.target));
    if (comm)
      for (const auto& s : ys) {
        if (!s.action) continue;
        for (const auto& u : zs) {
          if (!u.action) continue;
          auto c = sig_.communicate(*s.action, *u.action);
          if (!c) continue;
          Cond g = conj(s.guard, u.guard);
          std::optional<Action> label;
          if (s.action->kind() == Action::Kind::Basic) {
            label = Action::basic(*c);
          } else {
            for (std::size_t i = 0; i < s.action->args().size(); ++i)
              g = conj(g, Cond::cmp(CmpOp::Eq, s.action->args()[i], u.action->args()[i]));
            label = Action::param(*c, s.action->args());
          }
          push(out, g, label, get(s.target, u.target));
        }
      }
    if (term)
      for (const auto& s : ys)
        if (!s.action)
          for (const auto& u : zs)
            if (!u.action) push(out, conj(s.guard, u.guard), std::nullopt, 0);
    return out;
  };
  std::size_t root;
  if (t.is(Proc::Kind::Par)) {
    root = get(a, b);
  } else {
    const bool lm = t.is(Proc::Kind::LeftMerge);
    std::vector<Sum> out = moves(a, b, lm, false, !lm, false);
    root = add(t);
    eqs_[root].sums = std::move(out);
  }
  while (!work.empty()) {
    const auto [y, z] = work.back();
    work.pop_back();
    std::vector<Sum> out = moves(y, z, true, true, true, true);
    eqs_[pairs.at({y, z})].sums = std::move(out);
  }
  return root;
}

std::size_t Builder::encap_copy(const ActionSet& h, std::size_t a) {
  std::map<std::size_t, std::size_t> copy;
  std::vector<std::size_t> work;
  auto get = [&](std::size_t y) {
    auto it = copy.find(y);
    if (it != copy.end()) return it->second;
    const std::size_t n = add(Proc::encap(h, eqs_[y].theta));
    copy.emplace(y, n);
    work.push_back(y);
    return n;
  };
  const std::size_t root = get(a);
  while (!work.empty()) {
    const std::size_t y = work.back();
    work.pop_back();
    const std::vector<Sum> src = eqs_[y].sums;
    std::vector<Sum> out;
    for (const auto& s : src) {
      if (!s.action)
        push(out, s.guard, s.action, 0);
      else if (!h.contains(*s.action))
        push(out, s.guard, s.action, get(s.target));
    }
    eqs_[copy.at(y)].sums = std::move(out);
  }
  return root;
}

std::size_t Builder::eval_copy(const EvalMap& sigma, std::size_t a) {
  std::map<std::pair<std::size_t, EvalMap>, std::size_t> copy;
  std::vector<std::pair<std::size_t, EvalMap>> work;
  auto get = [&](std::size_t y, const EvalMap& m) {
    auto it = copy.find({y, m});
    if (it != copy.end()) return it->second;
    const std::size_t n = add(Proc::eval(m, eqs_[y].theta));
    copy.emplace(std::make_pair(y, m), n);
    work.emplace_back(y, m);
    return n;
  };
  const std::size_t root = get(a, sigma);
  while (!work.empty()) {
    const auto [y, m] = work.back();
    work.pop_back();
    const std::vector<Sum> src = eqs_[y].sums;
    std::vector<Sum> out;
    for (const auto& s : src) {
      if (!eval_cond(s.guard, m, sig_.carrier)) continue;
      if (!s.action) {
        push(out, Cond::truth(), std::nullopt, 0);
        continue;
      }
      const Action label = evaluate_label(*s.action, m, sig_.carrier);
      const EvalMap next = label.kind() == Action::Kind::Assign
                               ? m.updated(label.name(), label.value().value())
                               : m;
      push(out, Cond::truth(), label, get(s.target, next));
    }
    eqs_[copy.at({y, m})].sums = std::move(out);
  }
  return root;
}

std::size_t Builder::rec_copy(const Proc& t) {
  const RecSpecPtr& spec = t.spec();
  auto key = std::make_pair(spec.get(), t.name());
  auto it = rec_memo_.find(key);
  if (it != rec_memo_.end()) return it->second;
  for (const auto& [x, rhs] : spec->equations)
    if (!is_linear(rhs))
      throw Error(ErrorKind::Shape, "recursion equation for " + x + " is not linear");
  if (auto cyc = unguarded_cycle(*spec); !cyc.empty())
    throw Error(ErrorKind::Guardedness, "unguarded tau-cycle through " + cyc.front());
  const std::set<std::string> vars = reachable(*spec, t.name());
  std::map<std::string, std::size_t> idx;
  for (const auto& v : vars) {
    auto k = std::make_pair(spec.get(), v);
    auto found = rec_memo_.find(k);
    if (found != rec_memo_.end()) {
      idx[v] = found->second;
      continue;
    }
    idx[v] = add(Proc::recconst(v, spec));
    rec_memo_.emplace(k, idx[v]);
  }
  for (const auto& v : vars) {
    if (!eqs_[idx[v]].sums.empty()) continue;
    std::vector<Sum> out;
    for (const auto& s : summands(spec->rhs(v))) {
      if (s.arg().is(Proc::Kind::Epsilon))
        push(out, s.cond(), std::nullopt, 0);
      else
        push(out, s.cond(), s.arg().lhs().action(), idx.at(s.arg().rhs().name()));
    }
    eqs_[idx[v]].sums = std::move(out);
  }
  return idx.at(t.name());
}

void Builder::replace_pure_tau(const std::vector<std::size_t>& vars, std::size_t root) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v : vars) {
      if (v == root || is_epsilon_var(v)) continue;
      const auto& sums = eqs_[v].sums;
      if (sums.empty()) continue;
      bool pure = true;
      Cond any = Cond::falsity();
      for (const auto& s : sums) {
        if (!s.action || !s.action->is_tau() || !is_epsilon_var(s.target)) {
          pure = false;
          break;
        }
        any = any.is_false() ? s.guard : Cond::disj(any, s.guard);
      }
      if (!pure || !normalise(any).is_true()) continue;
      eqs_[v].sums = {{Cond::truth(), std::nullopt, 0}};
      eqs_[v].theta = Proc::guard(Cond::truth(), Proc::epsilon());
      changed = true;
    }
  }
}

std::size_t Builder::hide(const ActionSet& hidden, std::size_t a) {
  // Private copies, so that splitting and renaming leave shared variables alone.
  const std::vector<std::size_t> src = reach(a);
  std::map<std::size_t, std::size_t> loc;
  std::vector<std::size_t> vars;
  for (std::size_t y : src) {
    loc[y] = add(eqs_[y].theta);
    vars.push_back(loc[y]);
  }
  for (std::size_t y : src) {
    std::vector<Sum> row = eqs_[y].sums;
    for (auto& s : row)
      if (s.action) s.target = loc.at(s.target);
    eqs_[loc[y]].sums = std::move(row);
  }
  const std::size_t root = loc.at(a);

  auto scc_of = [&](const std::vector<std::size_t>& vs) {
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = i;
    std::vector<std::vector<std::size_t>> adj(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (const auto& s : eqs_[vs[i]].sums)
        if (internal_move(s, hidden)) adj[i].push_back(pos.at(s.target));
    std::vector<int> comp = components(adj);
    std::map<std::size_t, int> out;
    for (std::size_t i = 0; i < vs.size(); ++i) out[vs[i]] = comp[i];
    return out;
  };
  std::map<std::size_t, int> comp = scc_of(vars);
  std::map<int, std::size_t> comp_size;
  std::set<int> looping;
  for (std::size_t v : vars) {
    ++comp_size[comp[v]];
    for (const auto& s : eqs_[v].sums)
      if (internal_move(s, hidden) && s.target == v) looping.insert(comp[v]);
  }
  auto nontrivial = [&](int c) { return comp_size[c] > 1 || looping.count(c) > 0; };

  // Summands re-entering their own cycle without being internal moves go to a
  // fresh copy of their target, which sits outside the cycle.
  std::map<std::size_t, std::size_t> copy_of;
  const std::vector<std::size_t> originals = vars;
  for (std::size_t v : originals)
    for (const auto& s : eqs_[v].sums)
      if (s.action && comp.count(s.target) && comp[s.target] == comp[v] &&
          nontrivial(comp[v]) && !internal_move(s, hidden) && !copy_of.count(s.target)) {
        const std::size_t n = add(eqs_[s.target].theta);
        eqs_[n].sums = eqs_[s.target].sums;
        copy_of[s.target] = n;
        vars.push_back(n);
        comp[n] = -1 - static_cast<int>(n);
      }
  for (std::size_t v : originals)
    for (auto& s : eqs_[v].sums)
      if (s.action && copy_of.count(s.target) && comp[s.target] == comp[v] &&
          !internal_move(s, hidden))
        s.target = copy_of.at(s.target);

  // The split specification, before renaming, for the rule applications.
  std::map<std::size_t, std::string> name;
  for (std::size_t i = 0; i < vars.size(); ++i) name[vars[i]] = "Y" + std::to_string(i);
  std::vector<std::pair<std::string, Proc>> split_eqs;
  for (std::size_t v : vars) {
    std::vector<Proc> terms;
    for (const auto& s : eqs_[v].sums)
      terms.push_back(make_summand(s.guard, s.action, s.action ? name.at(s.target) : ""));
    split_eqs.emplace_back(name.at(v), alt_of(terms));
  }
  auto split = std::make_shared<const RecSpec>(std::move(split_eqs));

  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t v : vars)
    if (nontrivial(comp[v])) members[comp[v]].push_back(v);
  std::vector<std::vector<std::size_t>> clusters;
  for (auto& [_, ms] : members) clusters.push_back(ms);
  std::sort(clusters.begin(), clusters.end(),
            [&](const auto& x, const auto& y) { return x.front() < y.front(); });

  std::map<std::size_t, Proc> theta_arg;
  for (std::size_t v : vars) theta_arg.emplace(v, eqs_[v].theta);
  std::vector<std::vector<Sum>> exits;
  for (const auto& c : clusters) {
    cfar_.push_back(apply_cfar(split, name.at(c.front()), hidden));
    std::vector<Sum> ex;
    for (std::size_t v : c)
      for (const auto& s : eqs_[v].sums)
        if (!(internal_move(s, hidden) && comp[s.target] == comp[v]) &&
            std::find(ex.begin(), ex.end(), s) == ex.end())
          ex.push_back(s);
    exits.push_back(std::move(ex));
  }
  auto closed_exit = [&](const Sum& s) {
    if (!s.action) return Proc::guard(s.guard, Proc::epsilon());
    return Proc::guard(s.guard, Proc::seq(Proc::action(*s.action), theta_arg.at(s.target)));
  };

  auto rename = [&](std::vector<Sum>& row) {
    for (auto& s : row)
      if (s.action && hidden.contains(*s.action)) s.action = Action::tau();
  };
  for (std::size_t v : vars) {
    rename(eqs_[v].sums);
    eqs_[v].theta = Proc::abstr(hidden, theta_arg.at(v));
  }
  replace_pure_tau(vars, root);

  std::map<std::size_t, std::size_t> hat;
  std::vector<std::size_t> hats;
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    std::vector<Proc> terms;
    for (const auto& s : exits[k]) terms.push_back(closed_exit(s));
    const std::size_t h = add(Proc::abstr(hidden, alt_of(terms)));
    hats.push_back(h);
    for (std::size_t v : clusters[k]) hat[v] = h;
  }
  auto redirect = [&](std::vector<Sum> row) {
    rename(row);
    std::vector<Sum> out;
    for (auto s : row) {
      if (s.action && hat.count(s.target)) s.target = hat.at(s.target);
      push(out, s.guard, s.action, s.target);
    }
    return out;
  };
  for (std::size_t k = 0; k < clusters.size(); ++k) eqs_[hats[k]].sums = redirect(exits[k]);
  for (std::size_t v : vars)
    if (!hat.count(v)) eqs_[v].sums = redirect(eqs_[v].sums);

  std::size_t out_root = root;
  if (hat.count(root)) {
    const std::size_t c = hat.at(root);
    std::vector<Sum> row{{Cond::truth(), Action::tau(), c}};
    for (const auto& s : eqs_[root].sums)
      if (!(internal_move(s, hidden) && hat.count(s.target) && hat.at(s.target) == c))
        row.push_back(s);
    out_root = add(Proc::abstr(hidden, theta_arg.at(root)));
    eqs_[out_root].sums = redirect(row);
  }

  // Any tau-cycle left carries a contingent guard.
  const std::vector<std::size_t> after = reach(out_root);
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < after.size(); ++i) pos[after[i]] = i;
  std::vector<std::vector<std::size_t>> adj(after.size());
  for (std::size_t i = 0; i < after.size(); ++i)
    for (const auto& s : eqs_[after[i]].sums)
      if (s.action && s.action->is_tau()) adj[i].push_back(pos.at(s.target));
  const std::vector<int> tcomp = components(adj);
  std::map<int, int> tsize;
  for (std::size_t i = 0; i < after.size(); ++i) {
    ++tsize[tcomp[i]];
    for (std::size_t j : adj[i])
      if (j == i) tsize[tcomp[i]] += 2;
  }
  for (const auto& [c, n] : tsize)
    if (n > 1)
      throw Error(ErrorKind::CfarInapplicable,
                  "a tau-cycle with a contingent guard remains after abstraction");
  return out_root;
}

Linearization Builder::finish(std::size_t root) {
  replace_pure_tau(reach(root), root);
  const std::vector<std::size_t> order = reach(root);
  std::map<std::size_t, std::string> name;
  for (std::size_t i = 0; i < order.size(); ++i) name[order[i]] = "X" + std::to_string(i);
  std::vector<std::pair<std::string, Proc>> equations;
  Linearization out;
  for (std::size_t v : order) {
    std::vector<Proc> terms;
    for (const auto& s : eqs_[v].sums)
      terms.push_back(make_summand(s.guard, s.action, s.action ? name.at(s.target) : ""));
    equations.emplace_back(name.at(v), alt_of(terms));
    out.theta.emplace(name.at(v), eqs_[v].theta);
  }
  out.spec = std::make_shared<const RecSpec>(std::move(equations));
  out.root = name.at(root);
  out.cfar = std::move(cfar_);
  if (auto cyc = unguarded_cycle(*out.spec); !cyc.empty())
    throw Error(ErrorKind::Guardedness, "linearisation produced a tau-cycle through " + cyc.front());
  return out;
}

void require_closed(const Proc& t) {
  if (!free_recvars(t).empty())
    throw Error(ErrorKind::Shape, "term has free recursion variables");
}

}  // namespace

Linearization linearize(const Proc& t, const Signature& sig) {
  require_closed(t);
  if (has_abstraction(t))
    throw Error(ErrorKind::Scope, "linearize expects an abstraction-free term");
  Builder b(sig, false);
  return b.finish(b.lin(t));
}

Linearization normalize_bool_conditional(const Proc& t, const Signature& sig) {
  require_closed(t);
  if (!classify(t, sig).bool_conditional)
    throw Error(ErrorKind::Scope, "term has a condition that is neither valid nor unsatisfiable");
  Builder b(sig, true);
  return b.finish(b.lin(t));
}

ClusterAnalysis analyze_clusters(const RecSpecPtr& e, const ActionSet& hidden) {
  const IndexedSpec ix = index_spec(*e);
  const std::size_t n = ix.names.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& s : ix.sums[i])
      if (internal_move(s, hidden)) adj[i].push_back(s.target);
  const std::vector<int> comp = components(adj);

  auto condition_holds = [&](const std::set<std::size_t>& c) {
    for (std::size_t x : c)
      for (const auto& s : ix.sums[x])
        if (s.action && c.count(s.target) && !internal_move(s, hidden)) return false;
    return true;
  };
  std::map<int, std::set<std::size_t>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[comp[i]].insert(i);
  std::vector<std::set<std::size_t>> found;
  for (const auto& [_, g] : groups) {
    if (condition_holds(g)) {
      found.push_back(g);
      continue;
    }
    for (std::size_t x : g)
      if (condition_holds({x})) found.push_back({x});
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });

  ClusterAnalysis out;
  out.spec = e;
  out.hidden = hidden;
  for (const auto& c : found) {
    ClusterAnalysis::Cluster cl;
    std::set<std::size_t> owners;
    for (std::size_t x : c) {
      cl.vars.push_back(ix.names[x]);
      for (const auto& s : ix.sums[x]) {
        if (s.action && c.count(s.target) &&
            (s.action->is_tau() || hidden.contains(*s.action)))
          continue;
        Proc term = summand_term(ix, s);
        if (std::find(cl.exits.begin(), cl.exits.end(), term) == cl.exits.end()) {
          cl.exits.push_back(term);
          owners.insert(x);
        }
      }
    }
    cl.conservative = true;
    for (std::size_t x : c) {
      const std::set<std::string> r = reachable(*e, ix.names[x]);
      for (std::size_t o : owners)
        if (!r.count(ix.names[o])) cl.conservative = false;
    }
    out.clusters.push_back(std::move(cl));
  }
  return out;
}

namespace {

Proc cfar_lhs(const RecSpecPtr& e, const std::string& x, const ActionSet& hidden) {
  return Proc::seq(Proc::action(Action::tau()), Proc::abstr(hidden, Proc::recconst(x, e)));
}

Proc cfar_rhs(const RecSpecPtr& e, const std::vector<Proc>& exits, const ActionSet& hidden) {
  std::vector<Proc> closed;
  for (const auto& t : exits) closed.push_back(close_over(t, e));
  return Proc::seq(Proc::action(Action::tau()), Proc::abstr(hidden, alt_of(closed)));
}

}  // namespace

CfarApplication apply_cfar(const RecSpecPtr& e, const std::string& x, const ActionSet& hidden) {
  if (!is_guarded_linear_spec(*e))
    throw Error(ErrorKind::CfarInapplicable, "specification is not guarded linear");
  const ClusterAnalysis an = analyze_clusters(e, hidden);
  for (const auto& c : an.clusters) {
    if (std::find(c.vars.begin(), c.vars.end(), x) == c.vars.end()) continue;
    if (!c.conservative)
      throw Error(ErrorKind::CfarInapplicable, "the cluster of " + x + " is not conservative");
    return CfarApplication{e, hidden, x, c.vars, c.exits, cfar_lhs(e, x, hidden),
                           cfar_rhs(e, c.exits, hidden)};
  }
  throw Error(ErrorKind::CfarInapplicable, x + " lies in no cluster");
}

bool check_cfar(const CfarApplication& app, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (!app.spec) return fail("no specification");
  const RecSpec& e = *app.spec;
  if (!is_guarded_linear_spec(e)) return fail("specification is not guarded linear");
  const std::set<std::string> c(app.cluster.begin(), app.cluster.end());
  if (!c.count(app.var)) return fail(app.var + " is not in the cluster");
  std::vector<Proc> exits;
  for (const auto& x : app.cluster) {
    if (!e.find(x)) return fail(x + " has no equation");
    for (const auto& s : summands(e.rhs(x))) {
      const Proc& body = s.arg();
      if (!body.is(Proc::Kind::Epsilon)) {
        const Action& a = body.lhs().action();
        const bool inside = c.count(body.rhs().name()) > 0;
        const bool hidden = a.is_tau() || app.hidden.contains(a);
        if (inside && !(s.cond().is_true() && hidden))
          return fail("summand of " + x + " enters the cluster without a true-guarded hidden action");
        if (inside && hidden) continue;
      }
      if (std::find(exits.begin(), exits.end(), s) == exits.end()) exits.push_back(s);
    }
  }
  const std::set<Proc> want(exits.begin(), exits.end());
  const std::set<Proc> got(app.exits.begin(), app.exits.end());
  if (want != got) return fail("exit set differs from the definition");
  for (const auto& x : app.cluster) {
    const std::set<std::string> r = reachable(e, x);
    for (const auto& y : app.cluster)
      for (const auto& s : summands(e.rhs(y))) {
        if (!want.count(s)) continue;
        if (!r.count(y)) return fail("exit of " + y + " is unreachable from " + x);
      }
  }
  if (app.before != cfar_lhs(app.spec, app.var, app.hidden))
    return fail("left-hand side does not match the rule");
  if (app.after != cfar_rhs(app.spec, app.exits, app.hidden))
    return fail("right-hand side does not match the rule");
  return true;
}

}  // namespace deacp
