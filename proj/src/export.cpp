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

#include "deacp/export.hpp"

#include <json.hpp>

namespace deacp {

namespace {

using nlohmann::json;

json map_json(const EvalMap& m) {
  json o = json::object();
  for (const auto& [v, d] : m.entries()) o[v] = d;
  return o;
}

json set_json(const ActionSet& s) { return to_string(s); }

json spec_eqs(const RecSpec& e) {
  json o = json::array();
  for (const auto& [x, rhs] : e.equations) o.push_back({{"var", x}, {"rhs", render(rhs)}});
  return o;
}

json counterexample_json(const Counterexample& cx, const SigmaLts* l1, const SigmaLts* l2) {
  json trace = json::array();
  for (const auto& m : cx.trace) {
    json step{{"left", m.left_action}, {"right", m.right_action},
              {"reached", {m.reached.first, m.reached.second}}};
    if (l1) step["map"] = map_json(l1->maps.at(m.map));
    trace.push_back(std::move(step));
  }
  json o{{"pair", {cx.pair.first, cx.pair.second}},
         {"at_root", cx.at_root},
         {"side", cx.left_side ? "left" : "right"},
         {"observation", cx.action ? to_string(*cx.action) : std::string("termination")},
         {"description", cx.description},
         {"trace", std::move(trace)}};
  if (l1 && l2) {
    o["map"] = map_json(l1->maps.at(cx.map));
    o["states"] = {render(l1->states.at(cx.pair.first)), render(l2->states.at(cx.pair.second))};
  }
  return o;
}

json certificate_value(const ProofCertificate& c) {
  static const char* kinds[] = {"axiom", "rsp", "cfar", "close"};
  json steps = json::array();
  for (const auto& s : c.steps) {
    json o{{"kind", kinds[static_cast<int>(s.kind)]},
           {"rule", s.rule},
           {"reversed", s.reversed},
           {"before", render(s.before)},
           {"after", render(s.after)}};
    if (s.kind == ProofStep::Kind::Axiom) o["position"] = s.position;
    if (s.kind == ProofStep::Kind::Rsp) {
      json theta = json::object();
      for (const auto& [x, t] : s.theta) theta[x] = render(t);
      o["var"] = s.var;
      o["equations"] = spec_eqs(*s.spec);
      o["solution"] = std::move(theta);
    }
    if (s.cfar) {
      o["hidden"] = set_json(s.cfar->hidden);
      o["cluster"] = s.cfar->cluster;
      json exits = json::array();
      for (const auto& e : s.cfar->exits) exits.push_back(render(e));
      o["exits"] = std::move(exits);
    }
    if (s.kind == ProofStep::Kind::Close) {
      json rel = json::array();
      for (const auto& [p, q] : s.relation) rel.push_back({render(p), render(q)});
      o["relation"] = std::move(rel);
    }
    steps.push_back(std::move(o));
  }
  return {{"lhs", render(c.lhs)}, {"rhs", render(c.rhs)}, {"steps", std::move(steps)}};
}

json cfar_value(const CfarApplication& app) {
  json exits = json::array();
  for (const auto& e : app.exits) exits.push_back(render(e));
  return {{"var", app.var},
          {"hidden", set_json(app.hidden)},
          {"cluster", app.cluster},
          {"exits", std::move(exits)},
          {"equations", spec_eqs(*app.spec)},
          {"before", render(app.before)},
          {"after", render(app.after)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string spec_json(const SpecFile& f) {
  json procs = json::array();
  for (const auto& [n, p] : f.procs) procs.push_back({{"name", n}, {"term", render(p)}});
  json maps = json::array();
  for (const auto& [n, m] : f.maps) maps.push_back({{"name", n}, {"map", map_json(m)}});
  json specs = json::array();
  for (const auto& [n, e] : f.recspecs) specs.push_back({{"name", n}, {"equations", spec_eqs(*e)}});
  json actions = json::object();
  for (const auto& [a, n] : f.sig.arities) actions[a] = n;
  json comm = json::array();
  for (const auto& [ab, c] : f.sig.comm.entries()) comm.push_back({ab.first, ab.second, c});
  json o{{"domain", {f.sig.carrier.lo, f.sig.carrier.hi}},
         {"vars", f.sig.vars.names()},
         {"actions", std::move(actions)},
         {"comm", std::move(comm)},
         {"maps", std::move(maps)},
         {"recspecs", std::move(specs)},
         {"procs", std::move(procs)}};
  if (f.security)
    o["security"] = {{"low", f.security->low}, {"ext", set_json(f.security->ext)}};
  return dump(o);
}

std::string lts_json(const SigmaLts& l) {
  json states = json::array();
  for (const auto& s : l.states) states.push_back(render(s));
  json trans = json::array();
  for (const auto& t : l.transitions)
    trans.push_back({{"from", t.from}, {"map", map_json(l.maps.at(t.map))},
                     {"action", to_string(t.action)}, {"to", t.to}});
  json term = json::array();
  for (const auto& t : l.terminating)
    term.push_back({{"state", t.state}, {"map", map_json(l.maps.at(t.map))}});
  return dump({{"states", std::move(states)},
               {"root", l.root},
               {"vars", l.decl.names()},
               {"transitions", std::move(trans)},
               {"terminating", std::move(term)}});
}

std::string cond_lts_json(const CondLts& l) {
  json states = json::array();
  for (const auto& s : l.states) states.push_back(render(s));
  json trans = json::array();
  for (const auto& t : l.transitions)
    trans.push_back({{"from", t.from}, {"cond", to_string(t.cond)},
                     {"action", to_string(t.action)}, {"to", t.to}});
  json term = json::array();
  for (const auto& t : l.terminating)
    term.push_back({{"state", t.state}, {"cond", to_string(t.cond)}});
  return dump({{"states", std::move(states)},
               {"root", l.root},
               {"vars", l.decl.names()},
               {"transitions", std::move(trans)},
               {"terminating", std::move(term)}});
}

std::string bisim_json(const BisimResult& r, const SigmaLts* l1, const SigmaLts* l2) {
  json o{{"equivalent", r.equivalent}};
  if (r.equivalent) {
    json rel = json::array();
    for (const auto& [p, q] : r.relation) {
      if (l1 && l2) rel.push_back({render(l1->states.at(p)), render(l2->states.at(q))});
      else rel.push_back({p, q});
    }
    o["witness"] = std::move(rel);
  }
  if (r.counterexample) o["counterexample"] = counterexample_json(*r.counterexample, l1, l2);
  return dump(o);
}

std::string linearization_json(const Linearization& l) {
  json theta = json::object();
  for (const auto& [x, t] : l.theta) theta[x] = render(t);
  json cfar = json::array();
  for (const auto& app : l.cfar) cfar.push_back(cfar_value(app));
  return dump({{"root", l.root},
               {"equations", spec_eqs(*l.spec)},
               {"solution", std::move(theta)},
               {"cfar", std::move(cfar)}});
}

std::string clusters_json(const ClusterAnalysis& a) {
  json cs = json::array();
  for (const auto& c : a.clusters) {
    json exits = json::array();
    for (const auto& e : c.exits) exits.push_back(render(e));
    cs.push_back({{"vars", c.vars}, {"exits", std::move(exits)}, {"conservative", c.conservative}});
  }
  return dump({{"hidden", set_json(a.hidden)}, {"equations", spec_eqs(*a.spec)},
               {"clusters", std::move(cs)}});
}

std::string cfar_json(const CfarApplication& app) { return dump(cfar_value(app)); }

std::string certificate_json(const ProofCertificate& c) { return dump(certificate_value(c)); }

std::string outcome_json(const ProofOutcome& o) {
  json j{{"equivalent", o.certificate.has_value()}};
  if (o.certificate) j["certificate"] = certificate_value(*o.certificate);
  if (o.refutation && o.refutation->counterexample)
    j["counterexample"] = counterexample_json(*o.refutation->counterexample, nullptr, nullptr);
  return dump(j);
}

std::string dnii_json(const DerivedSets& d, const DniiVerdict& v) {
  auto acts = [](const std::set<Action>& s) {
    json a = json::array();
    for (const auto& x : s) a.push_back(to_string(x));
    return a;
  };
  json o{{"holds", v.holds},
         {"comparisons", v.comparisons},
         {"high", d.high},
         {"internal", acts(d.internal)},
         {"encapsulated", acts(d.encapsulated)}};
  if (!v.holds) {
    o["sigma"] = map_json(*v.sigma);
    o["sigma_prime"] = map_json(*v.sigma_prime);
    if (v.counterexample) o["counterexample"] = counterexample_json(*v.counterexample, nullptr, nullptr);
  }
  return dump(o);
}

std::string conjecture_json(const ConjectureReport& r) {
  json div = json::array();
  for (const auto& d : r.divergent)
    div.push_back({{"lhs", render(d.lhs)}, {"rhs", render(d.rhs)}, {"rb", d.rb}, {"ab", d.ab}});
  return dump({{"pairs", r.decided() + r.skipped},
               {"matrix",
                {{"both_equivalent", r.both_equivalent},
                 {"both_inequivalent", r.both_inequivalent},
                 {"rb_only", r.rb_only},
                 {"ab_only", r.ab_only}}},
               {"skipped", r.skipped},
               {"divergent", std::move(div)},
               {"notes", r.notes}});
}

}  // namespace deacp
