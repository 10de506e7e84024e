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

#include "deacp/security.hpp"

#include <sstream>

#include "deacp/errors.hpp"

namespace deacp {

namespace {

ActionSet::Pattern pattern_of(const Action& a) {
  using P = ActionSet::Pattern;
  switch (a.kind()) {
    case Action::Kind::Assign: return {P::Kind::AssignTo, a.name(), 0};
    case Action::Kind::Param:
      return {P::Kind::NameArity, a.name(), static_cast<int>(a.args().size())};
    default: return {P::Kind::NameArity, a.name(), 0};
  }
}

ActionSet cover(const std::set<Action>& acts) {
  std::vector<ActionSet::Pattern> ps;
  for (const auto& a : acts) ps.push_back(pattern_of(a));
  return ActionSet(std::move(ps));
}

}  // namespace

DerivedSets derive_sets(const SecuritySpec& s, const Signature& sig) {
  for (const auto& p : s.ext.patterns())
    if (p.kind == ActionSet::Pattern::Kind::AssignTo || p.kind == ActionSet::Pattern::Kind::All)
      throw Error(ErrorKind::Declaration, "external actions cannot include assignments");
  for (const auto& v : s.low)
    if (!sig.vars.contains(v))
      throw Error(ErrorKind::Declaration, "undeclared low variable '" + v + "'");

  DerivedSets d;
  for (const auto& v : occurring_flexible(s.process))
    if (!s.low.count(v)) d.high.insert(v);
  for (const auto& a : occurring_actions(s.process))
    if (!s.ext.contains(a)) d.internal.insert(a);
  for (const auto& a : d.internal)
    for (const auto& b : d.internal)
      if (sig.communicate(a, b)) {
        d.encapsulated.insert(a);
        break;
      }
  d.internal_set = cover(d.internal);
  d.encapsulated_set = cover(d.encapsulated);
  return d;
}

Proc observable(const SecuritySpec& s, const DerivedSets& d, const EvalMap& sigma) {
  return Proc::abstr(d.internal_set,
                     Proc::eval(sigma, Proc::encap(d.encapsulated_set, s.process)));
}

DniiVerdict check_dnii(const SecuritySpec& s, const Signature& sig) {
  const DerivedSets d = derive_sets(s, sig);
  std::vector<std::string> lows, highs(d.high.begin(), d.high.end());
  for (const auto& v : occurring_flexible(s.process))
    if (s.low.count(v)) lows.push_back(v);
  const std::vector<EvalMap> low_maps =
      enumerate_maps(FlexVarDecl(lows), sig.carrier, sig.limits.enumeration);
  const std::vector<EvalMap> high_maps =
      enumerate_maps(FlexVarDecl(highs), sig.carrier, sig.limits.enumeration);

  DniiVerdict out;
  for (const auto& lo : low_maps) {
    auto full = [&](const EvalMap& hi) {
      std::vector<EvalMap::Entry> e = lo.entries();
      e.insert(e.end(), hi.entries().begin(), hi.entries().end());
      return sig.complete_map(e);
    };
    // Bisimilarity is an equivalence, so comparing against the first high
    // assignment finds the lexicographically first failing pair.
    const EvalMap base = full(high_maps.front());
    const Proc ref = observable(s, d, base);
    for (std::size_t k = 1; k < high_maps.size(); ++k) {
      const EvalMap other = full(high_maps[k]);
      BisimResult r = compare_terms(ref, observable(s, d, other), sig);
      ++out.comparisons;
      if (!r.equivalent) {
        out.holds = false;
        out.sigma = base;
        out.sigma_prime = other;
        out.counterexample = std::move(r.counterexample);
        return out;
      }
    }
  }
  return out;
}

std::string describe_trace(const Counterexample& cx, const SigmaLts& left) {
  std::ostringstream out;
  for (const auto& m : cx.trace) {
    out << "under " << to_string(left.maps.at(m.map)) << ": ";
    out << (m.left_action.empty() ? "(stay)" : m.left_action) << " / "
        << (m.right_action.empty() ? "(stay)" : m.right_action) << "\n";
  }
  out << cx.description << "\n";
  return out.str();
}

}  // namespace deacp
