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

#include <doctest.h>

#include "deacp/axioms.hpp"
#include "deacp/errors.hpp"
#include "deacp/pairgen.hpp"
#include "deacp/proof.hpp"
#include "support.hpp"

using namespace deacp;

namespace {

bool cites(const ProofCertificate& c, const std::string& rule) {
  for (const auto& s : c.steps)
    if (s.rule == rule) return true;
  return false;
}

}  // namespace

TEST_SUITE("proof") {
  const SpecFile f = test::context();

  TEST_CASE("catalogue lookup") {
    for (const char* n : {"A1", "A6", "CM1E", "BE", "BED", "RDP", "V4", "T2", "CM7Da", "IMP1"})
      CHECK_MESSAGE(find_axiom(n) != nullptr, n);
    CHECK(find_axiom("nope") == nullptr);
    std::set<std::string> names;
    for (const auto& ax : axiom_catalogue()) CHECK(names.insert(ax.name).second);
  }

  TEST_CASE("generated instances are recognised by their axiom") {
    const Signature sig = generator_signature();
    for (const auto& ax : axiom_catalogue()) {
      TermGenerator g(sig, TermGenConfig{}, 19);
      for (int n = 0; n < 10; ++n) {
        const AxiomInstance in = ax.instance(g);
        CHECK_MESSAGE(is_axiom_instance(ax, in.lhs, in.rhs, sig), ax.name);
      }
    }
  }

  TEST_CASE("a non-instance is refused") {
    const Axiom& a6 = *find_axiom("A6");
    CHECK(is_axiom_instance(a6, test::term("a + delta", f), test::term("a", f), f.sig));
    CHECK_FALSE(is_axiom_instance(a6, test::term("a + delta", f), test::term("b", f), f.sig));
    CHECK_FALSE(is_axiom_instance(a6, test::term("a + b", f), test::term("a", f), f.sig));
  }

  TEST_CASE("closed data evaluates to a literal") {
    const Data e = evaluate_data(parse_data("v + 2", f), EvalMap({{"v", 1}, {"w", 0}}), f.sig.carrier);
    CHECK(e == Data::literal(3));
  }

  TEST_CASE("alternative with inaction") {
    const ProofOutcome o = prove_equal(test::term("a + delta", f), test::term("a", f), f.sig);
    REQUIRE(o.certificate.has_value());
    CHECK(cites(*o.certificate, "A6"));
    std::string why;
    CHECK_MESSAGE(replay_certificate(*o.certificate, f.sig, &why), why);
    CHECK(render_certificate(*o.certificate).find("A6") != std::string::npos);
  }

  TEST_CASE("subtraction") {
    const SpecFile g = parse_spec("domain -16..15; vars d, i, j;");
    const Proc t = parse_term(
        "eval{d = 0, i = 11, j = 3}(d := i . ([d >= j] -> d := d - j + [d < j] -> d := j - d))", g);
    const ProofOutcome o = prove_equal(t, parse_term("d := 11 . d := 8", g), g.sig);
    REQUIRE(o.certificate.has_value());
    CHECK(replay_certificate(*o.certificate, g.sig));
    CHECK(o.certificate->lhs == t);
  }

  TEST_CASE("distinct actions are refuted at the root") {
    const ProofOutcome o = prove_equal(test::term("a", f), test::term("b", f), f.sig);
    CHECK_FALSE(o.certificate.has_value());
    REQUIRE(o.refutation.has_value());
    REQUIRE(o.refutation->counterexample.has_value());
    CHECK(o.refutation->counterexample->trace.empty());
  }

  TEST_CASE("scope of the prover") {
    try {
      (void)prove_equal(test::term("hide{a}([v = 0] -> a)", f), test::term("[v = 0] -> tau", f),
                        f.sig);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Scope);
    }
  }

  TEST_CASE("tampered certificates do not replay") {
    const ProofOutcome o =
        prove_equal(test::term("(a + delta) . (b + b)", f), test::term("a . b", f), f.sig);
    REQUIRE(o.certificate.has_value());
    const ProofCertificate& good = *o.certificate;
    REQUIRE(good.steps.size() >= 2);
    CHECK(replay_certificate(good, f.sig));

    ProofCertificate wrong_rule = good;
    wrong_rule.steps[0].rule = wrong_rule.steps[0].rule == "A3" ? "A6" : "A3";
    CHECK_FALSE(replay_certificate(wrong_rule, f.sig));

    ProofCertificate gap = good;
    gap.steps.erase(gap.steps.begin());
    CHECK_FALSE(replay_certificate(gap, f.sig));

    ProofCertificate wrong_end = good;
    wrong_end.rhs = test::term("a . c", f);
    CHECK_FALSE(replay_certificate(wrong_end, f.sig));

    ProofCertificate bad_step = good;
    bad_step.steps[0].after = test::term("c", f);
    CHECK_FALSE(replay_certificate(bad_step, f.sig));
  }

  TEST_CASE("recursion-based certificates") {
    const SpecFile g = parse_spec(
        "actions a, b, c; recspec E { X = a . Y + b, Y = a . X + c }");
    const Proc hidden = parse_term("hide{a}(rec X where E)", g);
    const ProofOutcome o = prove_equal(hidden, parse_term("b + tau . (b + c)", g), g.sig);
    REQUIRE(o.certificate.has_value());
    bool rsp = false, cfar = false, close = false;
    for (const auto& s : o.certificate->steps) {
      rsp |= s.kind == ProofStep::Kind::Rsp;
      cfar |= s.kind == ProofStep::Kind::Cfar;
      close |= s.kind == ProofStep::Kind::Close;
    }
    CHECK(rsp);
    CHECK(cfar);
    CHECK(close);
    CHECK(replay_certificate(*o.certificate, g.sig));

    ProofCertificate broken = *o.certificate;
    for (auto& s : broken.steps)
      if (s.kind == ProofStep::Kind::Close && !s.relation.empty()) s.relation.pop_back();
    CHECK_FALSE(replay_certificate(broken, g.sig));
  }

  TEST_CASE("normalization steps are axiom instances and preserve behaviour") {
    const Signature sig = generator_signature();
    TermGenConfig cfg;
    cfg.recursion = false;
    TermGenerator g(sig, cfg, 71);
    for (int n = 0; n < 150; ++n) {
      const Proc t = g.term(3);
      const auto [nf, steps] = normalize(t, sig);
      Proc cur = t;
      for (const auto& s : steps) {
        REQUIRE(s.kind == ProofStep::Kind::Axiom);
        CHECK(s.before == cur);
        const Axiom* ax = find_axiom(s.rule);
        REQUIRE(ax != nullptr);
        const Proc& lhs = subterm(s.before, s.position);
        const Proc& rhs = subterm(s.after, s.position);
        CHECK_MESSAGE(is_axiom_instance(*ax, s.reversed ? rhs : lhs, s.reversed ? lhs : rhs, sig),
                      s.rule);
        cur = s.after;
      }
      CHECK(cur == nf);
      CHECK_MESSAGE(compare_terms(t, nf, sig).equivalent, render(t));
    }
  }

  TEST_CASE("generated bisimilar pairs prove and replay") {
    const Signature sig = generator_signature();
    PairGenConfig pc;
    pc.gen.abstraction = false;
    PairGenerator pg(sig, pc, 3);
    for (int n = 0; n < 60; ++n) {
      const GeneratedPair p = pg.next();
      const ProofOutcome o = prove_equal(p.lhs, p.rhs, sig);
      REQUIRE(o.certificate.has_value());
      std::string why;
      CHECK_MESSAGE(replay_certificate(*o.certificate, sig, &why), why);
    }
  }
}
