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

#include "deacp/generator.hpp"

namespace deacp {

Signature generator_signature(Value lo, Value hi) {
  Signature sig;
  sig.carrier = Carrier{lo, hi};
  sig.vars = FlexVarDecl({"v", "w"});
  for (const char* a : {"a", "b", "c"}) sig.arities[a] = 0;
  for (const char* a : {"s", "r", "k"}) sig.arities[a] = 1;
  sig.comm.add("a", "b", "c");
  sig.comm.add("s", "r", "k");
  sig.comm.validate(sig.action_names());
  return sig;
}

TermGenerator::TermGenerator(const Signature& sig, TermGenConfig cfg, std::uint64_t seed)
    : sig_(sig), cfg_(std::move(cfg)), rng_(seed) {}

int TermGenerator::below(int n) {
  return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng_));
}

bool TermGenerator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

Data TermGenerator::data(int depth) {
  const int k = below(depth > 1 ? 4 : 2);
  if (k == 0 || cfg_.vars.empty()) {
    return Data::literal(
        std::uniform_int_distribution<Value>(sig_.carrier.lo, sig_.carrier.hi)(rng_));
  }
  if (k == 1) return Data::flexible(cfg_.vars[below(static_cast<int>(cfg_.vars.size()))]);
  const DataOp ops[] = {DataOp::Add, DataOp::Sub, DataOp::Mul};
  return Data::apply(ops[below(3)], data(depth - 1), data(depth - 1));
}

Cond TermGenerator::cond(int depth) {
  const CmpOp ops[] = {CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge};
  if (cfg_.uniform_conditions) {
    // Reflexive comparisons and constants only, so every condition is
    // either valid or unsatisfiable.
    switch (below(depth > 1 ? 6 : 4)) {
      case 0: return Cond::truth();
      case 1: return Cond::falsity();
      case 2: {
        Data e = data(1);
        return Cond::cmp(ops[below(6)], e, e);
      }
      case 3: {
        Cond d = Cond::cmp(ops[below(6)], data(1), data(1));
        return chance(0.5) ? Cond::disj(d, Cond::negate(d)) : Cond::conj(d, Cond::negate(d));
      }
      case 4: return Cond::conj(cond(depth - 1), cond(depth - 1));
      default: return Cond::negate(cond(depth - 1));
    }
  }
  switch (below(depth > 1 ? 7 : 4)) {
    case 0: return Cond::truth();
    case 1: return Cond::falsity();
    case 2:
    case 3: return Cond::cmp(ops[below(6)], data(1), data(2));
    case 4: return Cond::conj(cond(depth - 1), cond(depth - 1));
    case 5: return Cond::disj(cond(depth - 1), cond(depth - 1));
    default: return Cond::negate(cond(depth - 1));
  }
}

EvalMap TermGenerator::map() {
  std::vector<EvalMap::Entry> entries;
  for (const auto& v : sig_.vars.names())
    entries.emplace_back(
        v, std::uniform_int_distribution<Value>(sig_.carrier.lo, sig_.carrier.hi)(rng_));
  return EvalMap(std::move(entries));
}

Action TermGenerator::basic() {
  return Action::basic(cfg_.basic[below(static_cast<int>(cfg_.basic.size()))]);
}

Action TermGenerator::param() {
  return Action::param(cfg_.param[below(static_cast<int>(cfg_.param.size()))], {data(1)});
}

Action TermGenerator::assignment() {
  return Action::assign(cfg_.vars[below(static_cast<int>(cfg_.vars.size()))], data(2));
}

Action TermGenerator::action() {
  const int k = below(cfg_.tau ? 10 : 9);
  if (k < 5) return basic();
  if (k < 7 && !cfg_.param.empty()) return param();
  if (k < 9 && !cfg_.vars.empty()) return assignment();
  if (k == 9) return Action::tau();
  return basic();
}

Proc TermGenerator::alpha() {
  if (chance(0.1)) return Proc::delta();
  return Proc::action(action());
}

ActionSet TermGenerator::action_set() {
  using P = ActionSet::Pattern;
  std::vector<P> pats;
  if (chance(0.05)) return ActionSet::all();
  for (const auto& a : cfg_.basic)
    if (chance(0.35)) pats.push_back({P::Kind::Name, a, 0});
  for (const auto& a : cfg_.param)
    if (chance(0.3)) pats.push_back({P::Kind::NameArity, a, 1});
  for (const auto& v : cfg_.vars)
    if (chance(0.2)) pats.push_back({P::Kind::AssignTo, v, 0});
  return ActionSet(std::move(pats));
}

Proc TermGenerator::recursion() {
  // Two or three variables, one or two summands each, tau-free so the
  // specification is guarded.
  const int n = 2 + below(2);
  const std::string prefix = "Z" + std::to_string(spec_counter_++) + "_";
  std::vector<std::pair<std::string, Proc>> eqs;
  for (int i = 0; i < n; ++i) {
    std::vector<Proc> sums;
    const int m = 1 + below(2);
    for (int j = 0; j < m; ++j) {
      const Cond g = chance(0.6) ? Cond::truth() : cond(1);
      if (chance(0.2)) {
        sums.push_back(Proc::guard(g, Proc::epsilon()));
        continue;
      }
      Action a = action();
      while (a.is_tau()) a = action();
      sums.push_back(Proc::guard(
          g, Proc::seq(Proc::action(a), Proc::recvar(prefix + std::to_string(below(n))))));
    }
    eqs.emplace_back(prefix + std::to_string(i), alt_of(sums));
  }
  auto spec = std::make_shared<const RecSpec>(std::move(eqs));
  return Proc::recconst(prefix + "0", spec);
}

Proc TermGenerator::atom() {
  const int k = below(20);
  if (k < 12) return Proc::action(action());
  if (k < 14) return Proc::delta();
  if (k < 17) return Proc::epsilon();
  if (k < 19 && cfg_.recursion) return recursion();
  return Proc::action(basic());
}

Proc TermGenerator::term(int depth) {
  if (depth <= 1 || chance(0.2)) return atom();
  const int d = depth - 1;
  while (true) {
    switch (below(11)) {
      case 0:
      case 1: return Proc::alt(term(d), term(d));
      case 2:
      case 3: return Proc::seq(term(d), term(d));
      case 4:
        if (!cfg_.merges) break;
        return Proc::par(term(d), term(d));
      case 5:
        if (!cfg_.merges) break;
        return chance(0.5) ? Proc::leftmerge(term(d), term(d)) : Proc::commmerge(term(d), term(d));
      case 6: return Proc::encap(action_set(), term(d));
      case 7:
        if (!cfg_.abstraction) break;
        return Proc::abstr(action_set(), term(d));
      case 8:
      case 9: return Proc::guard(cond(2), term(d));
      default:
        if (!cfg_.evaluation) break;
        return Proc::eval(map(), term(d));
    }
  }
}

}  // namespace deacp
