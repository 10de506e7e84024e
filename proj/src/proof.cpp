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

#include "deacp/proof.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "deacp/axioms.hpp"
#include "deacp/errors.hpp"
#include "deacp/parser.hpp"
#include "deacp/sos.hpp"

namespace deacp {

namespace {

using K = Proc::Kind;

struct Redex {
  Position pos;
  std::string rule;
  bool reversed = false;
  Proc result;
};

const std::vector<std::string>& rules_for(K k) {
  static const std::map<K, std::vector<std::string>> table{
      {K::Guard, {"IMP2", "GC1", "GC2", "GC3"}},
      {K::Alt, {"A6", "A3"}},
      {K::Seq, {"A7", "A8", "A9", "A5"}},
      {K::Eval, {"V0", "V1", "V2", "V3", "V4", "V5", "V6"}},
      {K::Encap, {"D0", "D1", "D2", "D3", "D4", "GC11"}},
      {K::Abstr, {"T0", "T1", "T2", "T3", "T4", "GC12"}},
      {K::LeftMerge, {"CM2E", "CM3", "CM4", "GC8"}},
      {K::CommMerge,
       {"CM5E", "CM6E", "CM7", "CM7Da", "CM7Db", "CM7Dc", "CM7Dd", "CM7De", "CM7Df", "CM8",
        "CM9", "GC9", "GC10"}},
  };
  static const std::vector<std::string> empty;
  auto it = table.find(k);
  return it == table.end() ? empty : it->second;
}

std::optional<Redex> redex_at(const Proc& p, const Signature& sig) {
  for (const auto& name : rules_for(p.kind())) {
    const Axiom* ax = find_axiom(name);
    if (auto r = ax->forward(p, sig)) return Redex{{}, name, false, *r};
  }
  // delta + x: commute so that A6 applies next.
  if (p.is(K::Alt) && p.lhs().is(K::Delta) && !p.rhs().is(K::Delta))
    return Redex{{}, "A1", false, Proc::alt(p.rhs(), p.lhs())};
  // A bare action under evaluation gets an explicit epsilon tail.
  if (p.is(K::Eval) && p.arg().is(K::Act))
    return Redex{{0}, "A8", true, Proc::seq(p.arg(), Proc::epsilon())};
  return std::nullopt;
}

std::optional<Redex> first_redex(const Proc& p, const Signature& sig, Position& here) {
  if (auto r = redex_at(p, sig)) {
    Position pos = here;
    pos.insert(pos.end(), r->pos.begin(), r->pos.end());
    r->pos = std::move(pos);
    return r;
  }
  if (p.is(K::RecConst)) return std::nullopt;
  for (std::size_t i = 0; i < p.child_count(); ++i) {
    here.push_back(i);
    auto r = first_redex(p.child(i), sig, here);
    here.pop_back();
    if (r) return r;
  }
  return std::nullopt;
}

ProofStep flipped(ProofStep s) {
  std::swap(s.before, s.after);
  s.reversed = !s.reversed;
  return s;
}

ProofStep rsp_step(const Proc& t, const Linearization& lin) {
  ProofStep s;
  s.kind = ProofStep::Kind::Rsp;
  s.rule = "RSP";
  s.before = t;
  s.after = lin.constant();
  s.spec = lin.spec;
  s.var = lin.root;
  s.theta.assign(lin.theta.begin(), lin.theta.end());
  return s;
}

std::string fail(std::string* why, std::size_t i, const std::string& msg) {
  if (why) *why = "step " + std::to_string(i) + ": " + msg;
  return msg;
}

bool replay_rsp(const ProofStep& s, const Signature& sig, std::string& msg) {
  const Proc& solution = s.reversed ? s.after : s.before;
  const Proc& constant = s.reversed ? s.before : s.after;
  if (!s.spec || constant != Proc::recconst(s.var, s.spec)) {
    msg = "RSP side is not the recursion constant";
    return false;
  }
  if (!is_guarded_linear_spec(*s.spec)) {
    msg = "RSP specification is not guarded linear";
    return false;
  }
  std::map<std::string, Proc> theta(s.theta.begin(), s.theta.end());
  auto it = theta.find(s.var);
  if (it == theta.end() || it->second != solution) {
    msg = "RSP solution does not match the term";
    return false;
  }
  for (const auto& [x, rhs] : s.spec->equations) {
    auto tx = theta.find(x);
    if (tx == theta.end()) {
      msg = "RSP solution misses variable " + x;
      return false;
    }
    const Proc inst = substitute_vars(rhs, theta);
    if (!compare_terms(tx->second, inst, sig).equivalent) {
      msg = "RSP antecedent fails for " + x;
      return false;
    }
  }
  return true;
}

bool replay_close(const ProofStep& s, const Signature& sig, std::string& msg) {
  const FlexVarDecl decl =
      FlexVarDecl::unite(free_flexible(s.before, sig), free_flexible(s.after, sig));
  const SigmaLts l1 = build_lts(s.before, decl, sig);
  const SigmaLts l2 = build_lts(s.after, decl, sig);
  std::map<Proc, std::size_t> id1, id2;
  for (std::size_t i = 0; i < l1.states.size(); ++i) id1.emplace(l1.states[i], i);
  for (std::size_t i = 0; i < l2.states.size(); ++i) id2.emplace(l2.states[i], i);
  std::vector<StatePair> rel;
  for (const auto& [p, q] : s.relation) {
    auto a = id1.find(p);
    auto b = id2.find(q);
    if (a == id1.end() || b == id2.end()) {
      msg = "relation names a state outside the transition systems";
      return false;
    }
    rel.emplace_back(a->second, b->second);
  }
  std::sort(rel.begin(), rel.end());
  return verify_witness(l1, l2, rel, sig.carrier, &msg);
}

}  // namespace

std::pair<Proc, std::vector<ProofStep>> normalize(const Proc& t, const Signature& sig,
                                                  std::size_t max_steps) {
  Proc cur = t;
  std::vector<ProofStep> steps;
  Position here;
  while (steps.size() < max_steps) {
    auto r = first_redex(cur, sig, here);
    if (!r) break;
    ProofStep s;
    s.rule = r->rule;
    s.reversed = r->reversed;
    s.position = r->pos;
    s.before = cur;
    s.after = replace_at(cur, r->pos, r->result);
    cur = s.after;
    steps.push_back(std::move(s));
  }
  return {cur, std::move(steps)};
}

ProofOutcome prove_equal(const Proc& t1, const Proc& t2, const Signature& sig) {
  const Classification c1 = classify(t1, sig);
  const Classification c2 = classify(t2, sig);
  const bool plain = c1.abstraction_free && c2.abstraction_free;
  if (!plain && !(c1.bool_conditional && c2.bool_conditional))
    throw Error(ErrorKind::Scope,
                "prove expects two abstraction-free terms or two terms whose conditions "
                "are all valid or unsatisfiable");
  if (!c1.closed || !c2.closed) throw Error(ErrorKind::Shape, "prove expects closed terms");

  BisimResult verdict = compare_terms(t1, t2, sig);
  if (!verdict.equivalent) return {std::nullopt, std::move(verdict)};

  ProofCertificate cert{t1, t2, {}};
  auto [n1, s1] = normalize(t1, sig);
  auto [n2, s2] = normalize(t2, sig);
  if (n1 == n2) {
    cert.steps = std::move(s1);
    for (auto it = s2.rbegin(); it != s2.rend(); ++it) cert.steps.push_back(flipped(*it));
    return {std::move(cert), std::nullopt};
  }

  auto lin = [&](const Proc& t) {
    return plain ? linearize(t, sig) : normalize_bool_conditional(t, sig);
  };
  const Linearization l1 = lin(t1);
  const Linearization l2 = lin(t2);
  for (const Linearization* l : {&l1, &l2})
    for (const auto& app : l->cfar) {
      ProofStep s;
      s.kind = ProofStep::Kind::Cfar;
      s.rule = "CFAR";
      s.before = app.before;
      s.after = app.after;
      s.cfar = app;
      cert.steps.push_back(std::move(s));
    }
  cert.steps.push_back(rsp_step(t1, l1));

  SigmaLts a, b;
  const BisimResult linked = compare_terms(l1.constant(), l2.constant(), sig, &a, &b);
  if (!linked.equivalent)
    throw Error(ErrorKind::Shape, "linearisations disagree with their source terms");
  ProofStep close;
  close.kind = ProofStep::Kind::Close;
  close.rule = "CLOSE";
  close.before = l1.constant();
  close.after = l2.constant();
  for (const auto& [i, j] : linked.relation) close.relation.emplace_back(a.states[i], b.states[j]);
  cert.steps.push_back(std::move(close));
  cert.steps.push_back(flipped(rsp_step(t2, l2)));
  return {std::move(cert), std::nullopt};
}

bool replay_certificate(const ProofCertificate& c, const Signature& sig, std::string* why) {
  Proc cur = c.lhs;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const ProofStep& s = c.steps[i];
    std::string msg;
    if (s.lemma()) {
      if (!s.cfar || s.cfar->before != s.before || s.cfar->after != s.after) {
        fail(why, i, "CFAR sides do not match the recorded application");
        return false;
      }
      if (!check_cfar(*s.cfar, &msg)) {
        fail(why, i, msg);
        return false;
      }
      continue;
    }
    if (s.before != cur) {
      fail(why, i, "does not continue from the previous term");
      return false;
    }
    switch (s.kind) {
      case ProofStep::Kind::Axiom: {
        const Axiom* ax = find_axiom(s.rule);
        if (!ax) {
          fail(why, i, "unknown axiom " + s.rule);
          return false;
        }
        Proc lo = s.before, hi = s.after;
        try {
          lo = subterm(s.before, s.position);
          hi = subterm(s.after, s.position);
        } catch (const Error&) {
          fail(why, i, "position does not address a subterm on both sides");
          return false;
        }
        if (replace_at(s.before, s.position, hi) != s.after) {
          fail(why, i, "terms differ outside the rewritten position");
          return false;
        }
        if (!is_axiom_instance(*ax, lo, hi, sig)) {
          fail(why, i, "not an instance of " + s.rule);
          return false;
        }
        break;
      }
      case ProofStep::Kind::Rsp:
        if (!replay_rsp(s, sig, msg)) {
          fail(why, i, msg);
          return false;
        }
        break;
      case ProofStep::Kind::Close:
        if (!replay_close(s, sig, msg)) {
          fail(why, i, msg);
          return false;
        }
        break;
      case ProofStep::Kind::Cfar: break;
    }
    cur = s.after;
  }
  if (cur != c.rhs) {
    if (why) *why = "derivation does not end in the right-hand side";
    return false;
  }
  return true;
}

std::string render_certificate(const ProofCertificate& c) {
  std::ostringstream out;
  out << render(c.lhs) << "\n";
  for (const auto& s : c.steps) {
    out << (s.lemma() ? "  lemma " : "  = ") << s.rule;
    if (s.reversed) out << "^-1";
    if (s.kind == ProofStep::Kind::Axiom && !s.position.empty()) {
      out << " at";
      for (std::size_t p : s.position) out << ' ' << p;
    }
    if (s.kind == ProofStep::Kind::Close) out << " (" << s.relation.size() << " pairs)";
    if (s.lemma()) out << ": " << render(s.before) << " = " << render(s.after);
    else out << ": " << render(s.after);
    out << "\n";
  }
  return out.str();
}

}  // namespace deacp
