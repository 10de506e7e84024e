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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "deacp/axioms.hpp"
#include "deacp/errors.hpp"
#include "deacp/pairgen.hpp"
#include "deacp/parser.hpp"
#include "deacp/proof.hpp"
#include "deacp/security.hpp"
#include "deacp/sos.hpp"
#include "deacp/sos_cond.hpp"

#ifndef DEACP_TEST_DATA
#define DEACP_TEST_DATA "tests/data"
#endif

using namespace deacp;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_time(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

SpecFile load(const std::string& name, ParseOptions opts = {}) {
  std::ifstream in(std::string(DEACP_TEST_DATA) + "/" + name);
  if (!in) throw std::runtime_error("cannot open " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), opts);
}

bool has_step(const ProofCertificate& c, ProofStep::Kind k) {
  for (const auto& s : c.steps)
    if (s.kind == k) return true;
  return false;
}

Verdict subtraction() {
  const auto t0 = Clock::now();
  SpecFile f = load("subtraction.deacp");
  const Proc& sub = f.proc("Sub");
  const Proc& chain = f.proc("Chain");
  ProofOutcome o = prove_equal(sub, chain, f.sig);
  std::string why;
  const bool cert = o.certificate && replay_certificate(*o.certificate, f.sig, &why);
  const bool iso = isomorphic(build_lts(sub, f.sig), build_lts(chain, f.sig));
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << "certificate=" << (cert ? "replays" : "missing " + why)
    << (cert ? " (" + std::to_string(o.certificate->steps.size()) + " steps)" : "")
    << " isomorphic=" << (iso ? "yes" : "no") << " time=" << fmt_time(dt);
  return {cert && iso && dt < 1.0, d.str()};
}

Verdict division() {
  const auto t0 = Clock::now();
  SpecFile f = load("division.deacp");
  SigmaLts l = build_lts(f.proc("Div"), f.sig);
  const std::vector<std::string> expected{"q := 0", "r := 11", "q := 1", "r := 8",
                                          "q := 2", "r := 5",  "q := 3", "r := 2"};
  bool ok = l.state_count() == expected.size() + 1 &&
            l.transitions.size() == expected.size() && l.terminating.size() == 1;
  std::size_t s = l.root;
  for (std::size_t i = 0; ok && i < expected.size(); ++i) {
    const SigmaLts::Transition* next = nullptr;
    for (const auto& t : l.transitions)
      if (t.from == s) next = &t;
    if (!next || to_string(next->action) != expected[i]) {
      ok = false;
      break;
    }
    s = next->to;
  }
  ok = ok && l.terminating.front().state == s;
  const double dt = seconds_since(t0);
  return {ok && dt < 1.0, "states=" + std::to_string(l.state_count()) +
                              " chain=" + (ok ? "exact" : "mismatch") +
                              " time=" + fmt_time(dt)};
}

Verdict cfar_example() {
  const auto t0 = Clock::now();
  SpecFile f = load("cfar.deacp");
  const Proc& hidden = f.proc("Hidden");
  const Proc& flat = f.proc("Flat");
  const bool rb = compare_terms(hidden, flat, f.sig).equivalent;
  ProofOutcome o = prove_equal(hidden, flat, f.sig);
  std::string why;
  const bool cert = o.certificate && replay_certificate(*o.certificate, f.sig, &why);
  bool prefixed = false;
  if (cert)
    for (const auto& st : o.certificate->steps)
      if (st.kind == ProofStep::Kind::Cfar && st.before.is(Proc::Kind::Seq) &&
          st.before.lhs() == Proc::action(Action::tau()) && st.after.is(Proc::Kind::Seq) &&
          st.after.lhs() == Proc::action(Action::tau()))
        prefixed = true;
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << "rb=" << (rb ? "equivalent" : "inequivalent")
    << " certificate=" << (cert ? "replays" : "missing " + why)
    << " prefixed-cfar-lemma=" << (prefixed ? "yes" : "no") << " time=" << fmt_time(dt);
  return {rb && cert && prefixed && dt < 1.0, d.str()};
}

Verdict axiom_soundness() {
  const auto t0 = Clock::now();
  const Signature sig = generator_signature(-4, 3);
  constexpr int kInstances = 40;
  std::size_t total = 0, passed = 0;
  std::ostringstream failures;
  for (const auto& ax : axiom_catalogue()) {
    TermGenerator g(sig, TermGenConfig{}, 7);
    int bad = 0;
    std::string first;
    for (int i = 0; i < kInstances; ++i) {
      AxiomInstance in = ax.instance(g);
      ++total;
      bool ok = false;
      try {
        BisimResult r = compare_terms(in.lhs, in.rhs, sig);
        ok = r.equivalent;
        if (!ok && first.empty()) first = render(in.lhs) + "  vs  " + render(in.rhs);
      } catch (const Error& e) {
        if (first.empty()) first = std::string("error: ") + e.what();
      }
      if (ok) ++passed;
      else ++bad;
    }
    if (bad) failures << "\n      " << ax.name << ": " << bad << "/" << kInstances << " e.g. " << first;
  }
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << axiom_catalogue().size() << " axioms, " << passed << "/" << total
    << " instances equivalent, time=" << fmt_time(dt) << failures.str();
  return {passed == total && dt < 600, d.str()};
}

struct PairStats {
  std::size_t ok = 0, with_cfar = 0, with_rsp = 0;
  std::string first_failure;
};

PairStats run_pairs(bool hide, std::size_t n, std::uint64_t seed) {
  const Signature sig = generator_signature(-4, 3);
  PairGenConfig pc;
  pc.gen.abstraction = hide;
  pc.gen.uniform_conditions = hide;
  pc.require_abstraction = hide;
  PairGenerator pg(sig, pc, seed);
  PairStats st;
  for (std::size_t i = 0; i < n; ++i) {
    GeneratedPair p = pg.next();
    std::string why;
    try {
      ProofOutcome o = prove_equal(p.lhs, p.rhs, sig);
      if (o.certificate && replay_certificate(*o.certificate, sig, &why)) {
        ++st.ok;
        st.with_cfar += has_step(*o.certificate, ProofStep::Kind::Cfar);
        st.with_rsp += has_step(*o.certificate, ProofStep::Kind::Rsp);
        continue;
      }
      if (o.refutation) why = o.refutation->counterexample->description;
    } catch (const Error& e) {
      why = e.what();
    }
    if (st.first_failure.empty())
      st.first_failure = render(p.lhs) + "  vs  " + render(p.rhs) + ": " + why;
  }
  return st;
}

Verdict semi_completeness_plain() {
  const auto t0 = Clock::now();
  constexpr std::size_t n = 150;
  PairStats st = run_pairs(false, n, 11);
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << st.ok << "/" << n << " certificates replay (" << st.with_rsp
    << " via recursion), time=" << fmt_time(dt);
  if (!st.first_failure.empty()) d << "\n      first failure: " << st.first_failure;
  return {st.ok == n && dt < 600, d.str()};
}

Verdict semi_completeness_hidden() {
  const auto t0 = Clock::now();
  constexpr std::size_t n = 100;
  PairStats st = run_pairs(true, n, 11);
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << st.ok << "/" << n << " certificates replay, " << st.with_cfar
    << " with CFAR lemmas, time=" << fmt_time(dt);
  if (!st.first_failure.empty()) d << "\n      first failure: " << st.first_failure;
  return {st.ok == n && st.with_cfar >= 10 && dt < 600, d.str()};
}

Verdict cross_semantics() {
  const auto t0 = Clock::now();
  const Signature sig = generator_signature(-4, 3);
  TermGenerator g(sig, TermGenConfig{}, 23);
  constexpr std::size_t n = 250;
  std::size_t agree = 0, states = 0;
  std::string first;
  for (std::size_t i = 0; i < n; ++i) {
    Proc t = g.term(3);
    try {
      SigmaLts direct = build_lts(t, sig);
      SigmaLts expanded = expand_to_sigma(build_cond_lts(t, direct.decl, sig), sig);
      if (isomorphic(direct, expanded)) {
        ++agree;
        states += direct.state_count();
        continue;
      }
      if (first.empty()) first = render(t);
    } catch (const Error& e) {
      if (first.empty()) first = render(t) + ": " + e.what();
    }
  }
  std::ostringstream d;
  d << agree << "/" << n << " terms isomorphic (" << states << " states total), time="
    << fmt_time(seconds_since(t0));
  if (!first.empty()) d << "\n      first mismatch: " << first;
  return {agree == n, d.str()};
}

Verdict conjecture() {
  const auto t0 = Clock::now();
  const Signature sig = generator_signature(-4, 3);
  ConjectureConfig cfg;
  cfg.pairs = 600;
  ConjectureReport r = conjecture_experiment(cfg, sig);
  std::ostringstream d;
  d << r.decided() << " pairs decided: " << r.both_equivalent << " both equivalent, "
    << r.both_inequivalent << " both inequivalent, " << r.rb_only << " rb-only, " << r.ab_only
    << " ab-only, " << r.skipped << " skipped, time=" << fmt_time(seconds_since(t0));
  for (const auto& x : r.divergent)
    d << "\n      finding: " << render(x.lhs) << "  vs  " << render(x.rhs) << " rb=" << x.rb
      << " ab=" << x.ab;
  return {r.decided() >= 500, d.str()};
}

Verdict dnii() {
  ParseOptions opts;
  opts.carrier = Carrier{-4, 3};
  auto run = [&](const char* file, double& dt) {
    const auto t0 = Clock::now();
    SpecFile f = load(file, opts);
    SecuritySpec s{f.proc("P"), f.security->low, f.security->ext};
    DniiVerdict v = check_dnii(s, f.sig);
    dt = seconds_since(t0);
    return v;
  };
  double t_leak = 0, t_copy = 0;
  DniiVerdict leak = run("leak.deacp", t_leak);
  DniiVerdict copy = run("lowcopy.deacp", t_copy);
  const bool leak_ok = !leak.holds && leak.sigma && leak.sigma_prime && leak.counterexample;
  std::ostringstream d;
  d << "leak: " << (leak.holds ? "holds" : "fails");
  if (leak.sigma && leak.sigma_prime)
    d << " with " << to_string(*leak.sigma) << " vs " << to_string(*leak.sigma_prime);
  d << " (" << fmt_time(t_leak) << "); lowcopy: " << (copy.holds ? "holds" : "fails") << " over "
    << copy.comparisons << " comparisons (" << fmt_time(t_copy) << ")";
  return {leak_ok && copy.holds && t_leak < 5 && t_copy < 5, d.str()};
}

bool tau_free(const SigmaLts& l) {
  for (const auto& t : l.transitions)
    if (t.action.is_tau()) return false;
  return true;
}

Verdict bisim_oracle() {
  const auto t0 = Clock::now();
  const Signature sig = generator_signature(-4, 3);
  PairGenConfig pc;
  pc.gen.tau = false;
  pc.gen.abstraction = false;
  PairGenerator pg(sig, pc, 5);
  std::size_t compared = 0, agree = 0, equivalent = 0;
  std::string first;
  auto check = [&](const Proc& p, const Proc& q) {
    SigmaLts l1, l2;
    BisimResult r;
    try {
      r = compare_terms(p, q, sig, &l1, &l2);
    } catch (const Error&) {
      return;
    }
    if (!tau_free(l1) || !tau_free(l2) || l1.state_count() > 50 || l2.state_count() > 50) return;
    ++compared;
    equivalent += r.equivalent;
    if (r.equivalent == signature_bisim(l1, l2, sig.carrier)) ++agree;
    else if (first.empty()) first = render(p) + "  vs  " + render(q);
  };
  for (int i = 0; i < 300; ++i) {
    GeneratedPair gp = pg.next();
    check(gp.lhs, gp.rhs);
    check(gp.lhs, pg.terms().term(3));
  }
  std::ostringstream d;
  d << agree << "/" << compared << " tau-free comparisons agree (" << equivalent
    << " equivalent), time=" << fmt_time(seconds_since(t0));
  if (!first.empty()) d << "\n      first disagreement: " << first;
  return {compared >= 200 && agree == compared, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"subtraction example proves and LTSs are isomorphic", subtraction},
      {"division example yields the exact eight-step chain", division},
      {"hidden cluster example is rb-equivalent with a CFAR certificate", cfar_example},
      {"axiom soundness over random instances", axiom_soundness},
      {"abstraction-free bisimilar pairs get replaying certificates", semi_completeness_plain},
      {"bool-conditional pairs with hiding get replaying certificates", semi_completeness_hidden},
      {"condition-labelled LTS expands to the map-labelled LTS", cross_semantics},
      {"rb vs ab conjecture experiment report", conjecture},
      {"data non-interference verdicts", dnii},
      {"naive and signature bisimulation agree on tau-free LTSs", bisim_oracle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first
              << ": " << v.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed ? 1 : 0;
}
