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

#include "deacp/bisim.hpp"
#include "deacp/errors.hpp"
#include "deacp/generator.hpp"
#include "deacp/linearize.hpp"
#include "deacp/sos.hpp"
#include "support.hpp"

using namespace deacp;

namespace {

const char* kCluster =
    "rec X where { X = [true] -> a . Y + [true] -> b . Z,"
    " Y = [true] -> a . X + [true] -> c . Z, Z = [true] -> epsilon }";

ActionSet only(const std::string& name) {
  return ActionSet({{ActionSet::Pattern::Kind::Name, name, 0}});
}

// Solutions are checked against the semantics rather than by shape.
void check_solution(const Proc& t, const Linearization& l, const Signature& sig) {
  CHECK(is_guarded_linear_spec(*l.spec));
  CHECK(l.theta.at(l.root) == t);
  CHECK_MESSAGE(compare_terms(t, l.constant(), sig).equivalent, render(t));
  for (const auto& [x, rhs] : l.spec->equations)
    CHECK_MESSAGE(compare_terms(l.theta.at(x), substitute_vars(rhs, l.theta), sig).equivalent,
                  render(t) << " at " << x);
  for (const auto& app : l.cfar) {
    std::string why;
    CHECK_MESSAGE(check_cfar(app, &why), why);
  }
}

}  // namespace

TEST_SUITE("linearize") {
  const SpecFile f = test::context();

  TEST_CASE("a sequential chain") {
    const Proc t = test::term("a . b", f);
    const Linearization l = linearize(t, f.sig);
    REQUIRE(l.spec->equations.size() == 3);
    const Proc& x = l.spec->rhs(l.root);
    REQUIRE(summands(x).size() == 1);
    const Proc s = summands(x).front();
    CHECK(s.cond().is_true());
    CHECK(s.arg().lhs() == test::term("a", f));
    const Proc y = summands(l.spec->rhs(s.arg().rhs().name())).front();
    CHECK(y.arg().lhs() == test::term("b", f));
    CHECK(l.spec->rhs(y.arg().rhs().name()) == test::term("[true] -> epsilon", f));
    check_solution(t, l, f.sig);
  }

  TEST_CASE("subtraction collapses to two assignments") {
    const SpecFile g = parse_spec("domain -16..15; vars d, i, j;");
    const Proc t = parse_term(
        "eval{d = 0, i = 11, j = 3}(d := i . ([d >= j] -> d := d - j + [d < j] -> d := j - d))", g);
    const Linearization l = linearize(t, g.sig);
    check_solution(t, l, g.sig);
    const SigmaLts s = build_lts(l.constant(), g.sig);
    std::vector<std::string> labels;
    for (const auto& tr : s.transitions)
      if (tr.map == 0) labels.push_back(to_string(tr.action));
    CHECK(labels == std::vector<std::string>{"d := 11", "d := 8"});
  }

  TEST_CASE("left merge linearizes to a sequence") {
    const Linearization l = linearize(test::term("a ||_ b", f), f.sig);
    CHECK(compare_terms(l.constant(), test::term("a . b", f), f.sig).equivalent);
  }

  TEST_CASE("abstraction is outside the abstraction-free pipeline") {
    CHECK_THROWS_AS((void)linearize(test::term("hide{a}(a . b)", f), f.sig), Error);
  }

  TEST_CASE("random abstraction-free terms") {
    TermGenConfig cfg;
    cfg.abstraction = false;
    TermGenerator g(f.sig, cfg, 61);
    for (int n = 0; n < 150; ++n) {
      const Proc t = g.term(3);
      check_solution(t, linearize(t, f.sig), f.sig);
    }
  }

  TEST_CASE("clusters of the hidden example") {
    const Proc t = parse_term(kCluster, f);
    const ClusterAnalysis an = analyze_clusters(t.spec(), only("a"));
    const ClusterAnalysis::Cluster* xy = nullptr;
    for (const auto& c : an.clusters)
      if (std::find(c.vars.begin(), c.vars.end(), "X") != c.vars.end()) xy = &c;
    REQUIRE(xy != nullptr);
    CHECK(xy->vars == std::vector<std::string>{"X", "Y"});
    CHECK(xy->conservative);
    const auto& spec = t.spec();
    CHECK(std::set<Proc>(xy->exits.begin(), xy->exits.end()) ==
          std::set<Proc>{summands(spec->rhs("X"))[1], summands(spec->rhs("Y"))[1]});
  }

  TEST_CASE("without hiding every cluster is a singleton") {
    const Proc t = parse_term(kCluster, f);
    const ClusterAnalysis an = analyze_clusters(t.spec(), ActionSet{});
    for (const auto& c : an.clusters) {
      CHECK(c.vars.size() == 1);
      CHECK(c.conservative);
      CHECK(c.exits == summands(t.spec()->rhs(c.vars.front())));
    }
  }

  TEST_CASE("CFAR on the hidden example") {
    const Proc t = parse_term(kCluster, f);
    const CfarApplication app = apply_cfar(t.spec(), "X", only("a"));
    std::string why;
    CHECK_MESSAGE(check_cfar(app, &why), why);
    const Proc tau = Proc::action(Action::tau());
    CHECK(app.before == Proc::seq(tau, Proc::abstr(only("a"), t)));
    const Proc zc = Proc::recconst("Z", t.spec());
    const Proc exit_b = Proc::guard(Cond::truth(), Proc::seq(test::term("b", f), zc));
    const Proc exit_c = Proc::guard(Cond::truth(), Proc::seq(test::term("c", f), zc));
    CHECK(app.after == Proc::seq(tau, Proc::abstr(only("a"), Proc::alt(exit_b, exit_c))));
    CHECK(compare_terms(app.before, app.after, f.sig).equivalent);
    CHECK(compare_terms(app.before, test::term("tau . (b + c)", f), f.sig).equivalent);
  }

  TEST_CASE("a livelock cluster has no exits") {
    const Proc t = parse_term("rec X where { X = [true] -> a . Y, Y = [true] -> a . X }", f);
    const CfarApplication app = apply_cfar(t.spec(), "X", only("a"));
    CHECK(app.exits.empty());
    CHECK(app.after == Proc::seq(Proc::action(Action::tau()), Proc::abstr(only("a"), Proc::delta())));
    CHECK(check_cfar(app));
    CHECK(compare_terms(app.before, app.after, f.sig).equivalent);
  }

  TEST_CASE("a degenerate cluster keeps every summand") {
    const Proc t = parse_term("rec X where { X = [true] -> b . Y, Y = [true] -> epsilon }", f);
    const CfarApplication app = apply_cfar(t.spec(), "X", only("a"));
    CHECK(app.cluster == std::vector<std::string>{"X"});
    CHECK(app.exits == summands(t.spec()->rhs("X")));
    CHECK(compare_terms(app.before, app.after, f.sig).equivalent);
  }

  TEST_CASE("a non-conservative cluster is rejected and would be unsound") {
    const Proc t = parse_term(
        "rec X where { X = [true] -> a . X + [true] -> b . Z, Y = [true] -> a . Y + [true] -> c . Z,"
        " Z = [true] -> epsilon }", f);
    const auto& e = t.spec();
    const std::vector<Proc> exits{summands(e->rhs("X"))[1], summands(e->rhs("Y"))[1]};
    CfarApplication app{e, only("a"), "X", {"X", "Y"}, exits, Proc::delta(), Proc::delta()};
    const Proc tau = Proc::action(Action::tau());
    app.before = Proc::seq(tau, Proc::abstr(only("a"), t));
    std::vector<Proc> closed;
    for (const auto& x : exits) closed.push_back(close_over(x, e));
    app.after = Proc::seq(tau, Proc::abstr(only("a"), alt_of(closed)));
    std::string why;
    CHECK_FALSE(check_cfar(app, &why));
    CHECK(why.find("unreachable") != std::string::npos);
    CHECK_FALSE(compare_terms(app.before, app.after, f.sig).equivalent);
  }

  TEST_CASE("CFAR needs a cluster") {
    const Proc t = parse_term("rec X where { X = [true] -> a . X + [true] -> c . X }", f);
    try {
      (void)apply_cfar(t.spec(), "X", only("a"));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CfarInapplicable);
    }
  }

  TEST_CASE("bool-conditional normalization") {
    const Proc hidden = Proc::abstr(only("a"), parse_term(kCluster, f));
    const Linearization l = normalize_bool_conditional(hidden, f.sig);
    check_solution(hidden, l, f.sig);
    CHECK_FALSE(l.cfar.empty());
    CHECK(compare_terms(l.constant(), test::term("b + tau . (b + c)", f), f.sig).equivalent);

    const Linearization e = normalize_bool_conditional(test::term("hide{}(a . b)", f), f.sig);
    CHECK(compare_terms(e.constant(), test::term("a . b", f), f.sig).equivalent);
    const Linearization r = normalize_bool_conditional(test::term("hide{a}(a)", f), f.sig);
    CHECK(compare_terms(r.constant(), test::term("tau", f), f.sig).equivalent);
  }

  TEST_CASE("normalization rejects contingent guards") {
    try {
      (void)normalize_bool_conditional(test::term("hide{a}([v = 0] -> a)", f), f.sig);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Scope);
    }
  }

  TEST_CASE("random bool-conditional terms with hiding") {
    TermGenConfig cfg;
    cfg.uniform_conditions = true;
    TermGenerator g(f.sig, cfg, 67);
    int with_cfar = 0;
    for (int n = 0; n < 150; ++n) {
      const Proc t = Proc::abstr(g.action_set(), g.term(3));
      const Linearization l = normalize_bool_conditional(t, f.sig);
      check_solution(t, l, f.sig);
      with_cfar += !l.cfar.empty();
    }
    CHECK(with_cfar > 0);
  }
}
