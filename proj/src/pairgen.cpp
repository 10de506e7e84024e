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

#include "deacp/pairgen.hpp"

#include <algorithm>

#include "deacp/bisim.hpp"
#include "deacp/errors.hpp"

namespace deacp {

namespace {

using K = Proc::Kind;

bool has_tau(const Proc& t) {
  if (t.is(K::Act)) return t.action().is_tau();
  if (t.is(K::Abstr)) return true;
  if (t.is(K::RecConst)) {
    for (const auto& [_, rhs] : t.spec()->equations)
      if (has_tau(rhs)) return true;
    return false;
  }
  for (std::size_t i = 0; i < t.child_count(); ++i)
    if (has_tau(t.child(i))) return true;
  return false;
}

bool valid_closed(const Cond& c, const Signature& sig) {
  std::set<std::string> vs;
  collect_flexible(c, vs);
  return valid(c, FlexVarDecl(std::vector<std::string>(vs.begin(), vs.end())), sig.carrier,
               sig.limits.enumeration);
}

void positions(const Proc& t, Position& here, std::vector<Position>& out) {
  out.push_back(here);
  if (t.is(K::RecConst)) return;
  for (std::size_t i = 0; i < t.child_count(); ++i) {
    here.push_back(i);
    positions(t.child(i), here, out);
    here.pop_back();
  }
}

ActionSet::Pattern hiding_pattern(const Action& a) {
  using P = ActionSet::Pattern;
  switch (a.kind()) {
    case Action::Kind::Assign: return {P::Kind::AssignTo, a.name(), 0};
    case Action::Kind::Param:
      return {P::Kind::NameArity, a.name(), static_cast<int>(a.args().size())};
    default: return {P::Kind::Name, a.name(), 0};
  }
}

}  // namespace

bool sound_application(const std::string& rule, const Proc& redex, const Proc& result,
                       const Signature& sig) {
  if (rule == "CM1E") {
    const Proc& par = redex.is(K::Par) ? redex : result;
    return !has_tau(par.lhs()) && !has_tau(par.rhs());
  }
  if (rule == "BED") {
    // The guarded alternative sits under the prefix on either side.
    const Proc& rhs = redex.rhs().is(K::Guard) ? redex.rhs() : result.rhs();
    return valid_closed(rhs.cond(), sig);
  }
  return true;
}

PairGenerator::PairGenerator(const Signature& sig, PairGenConfig cfg, std::uint64_t seed)
    : sig_(sig), cfg_(std::move(cfg)), gen_(sig, cfg_.gen, seed) {}

Proc PairGenerator::rewrite(const Proc& t, std::string* rule) {
  std::vector<Position> pos;
  Position here;
  positions(t, here, pos);
  const auto& axioms = axiom_catalogue();
  for (int attempt = 0; attempt < 200; ++attempt) {
    const Position& p = pos[gen_.below(static_cast<int>(pos.size()))];
    const Axiom& ax = axioms[gen_.below(static_cast<int>(axioms.size()))];
    const bool back = gen_.chance(0.5);
    const Axiom::Rewrite& f = back ? ax.backward : ax.forward;
    if (!f) continue;
    const Proc& redex = subterm(t, p);
    auto r = f(redex, sig_);
    if (!r || *r == redex || !sound_application(ax.name, redex, *r, sig_)) continue;
    Proc out = replace_at(t, p, *r);
    if (term_size(out) > cfg_.max_size) continue;
    if (!cfg_.gen.abstraction && has_abstraction(out)) continue;
    if (cfg_.gen.uniform_conditions && !classify(out, sig_).bool_conditional) continue;
    if (rule) *rule = ax.name + (back ? "^-1" : "");
    return out;
  }
  return t;
}

Proc PairGenerator::hidden_recursion() {
  // Hide some of the actions the specification uses, so that clusters form.
  const Proc rec = gen_.recursion();
  std::set<Action> used;
  for (const auto& [_, rhs] : rec.spec()->equations)
    for (const auto& a : occurring_actions(rhs)) used.insert(a);
  std::vector<ActionSet::Pattern> pats;
  for (const auto& a : used)
    if (gen_.chance(0.6)) pats.push_back(hiding_pattern(a));
  if (pats.empty() && !used.empty()) pats.push_back(hiding_pattern(*used.begin()));
  Proc t = Proc::abstr(ActionSet(std::move(pats)), rec);
  switch (gen_.below(4)) {
    case 0: return Proc::seq(Proc::action(gen_.basic()), t);
    case 1: return Proc::alt(t, gen_.term(2));
    default: return t;
  }
}

GeneratedPair PairGenerator::next() {
  Proc lhs = cfg_.require_abstraction && gen_.chance(0.5) ? hidden_recursion()
                                                          : gen_.term(cfg_.depth);
  while (cfg_.require_abstraction && !has_abstraction(lhs)) lhs = gen_.term(cfg_.depth);
  GeneratedPair out{lhs, lhs, {}};
  if (cfg_.require_abstraction || gen_.chance(0.5)) {
    // Unfold one recursion constant so the two sides differ beyond
    // what plain rewriting normalises away.
    std::vector<Position> pos;
    Position here;
    positions(lhs, here, pos);
    for (const auto& p : pos)
      if (subterm(lhs, p).is(K::RecConst)) {
        out.rhs = replace_at(lhs, p, *find_axiom("RDP")->forward(subterm(lhs, p), sig_));
        out.rules.push_back("RDP");
        break;
      }
  }
  for (int i = 0; i < cfg_.rewrites; ++i) {
    std::string rule;
    out.rhs = rewrite(out.rhs, &rule);
    if (!rule.empty()) out.rules.push_back(rule);
  }
  return out;
}

ConjectureReport conjecture_experiment(const ConjectureConfig& cfg, const Signature& sig) {
  ConjectureReport rep;
  PairGenConfig pc;
  pc.gen = cfg.gen;
  pc.depth = cfg.depth;
  PairGenerator pg(sig, pc, cfg.seed);
  TermGenerator& g = pg.terms();
  const auto& axioms = axiom_catalogue();
  for (std::size_t i = 0; i < cfg.pairs; ++i) {
    Proc lhs = Proc::delta(), rhs = Proc::delta();
    switch (i % 4) {
      case 0: {
        GeneratedPair p = pg.next();
        lhs = p.lhs;
        rhs = p.rhs;
        break;
      }
      case 1: {
        AxiomInstance inst = axioms[g.below(static_cast<int>(axioms.size()))].instance(g);
        lhs = inst.lhs;
        rhs = inst.rhs;
        break;
      }
      case 2: {
        // A copy with one leaf replaced: usually, not always, distinguishable.
        lhs = g.term(cfg.depth);
        std::vector<Position> pos;
        Position here;
        positions(lhs, here, pos);
        const Position& p = pos[g.below(static_cast<int>(pos.size()))];
        rhs = replace_at(lhs, p, g.atom());
        break;
      }
      default:
        lhs = g.term(cfg.depth);
        rhs = g.term(cfg.depth);
    }
    try {
      const bool rb = compare_terms(lhs, rhs, sig).equivalent;
      const bool ab = compare_terms_ab(lhs, rhs, sig).equivalent;
      if (rb && ab) ++rep.both_equivalent;
      else if (!rb && !ab) ++rep.both_inequivalent;
      else {
        (rb ? rep.rb_only : rep.ab_only) += 1;
        rep.divergent.push_back({lhs, rhs, rb, ab});
      }
    } catch (const Error& e) {
      ++rep.skipped;
      rep.notes.push_back("pair " + std::to_string(i) + ": " + e.what());
    }
  }
  return rep;
}

}  // namespace deacp
