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

#include "deacp/axioms.hpp"

#include <set>

#include "deacp/errors.hpp"

namespace deacp {

Data evaluate_data(const Data& e, const EvalMap& sigma, const Carrier& carrier) {
  return Data::literal(eval_data(e, sigma, carrier));
}

namespace {

using K = Proc::Kind;
using Opt = std::optional<Proc>;
using Gen = TermGenerator;

bool is_alpha(const Proc& p) { return p.is(K::Act) || p.is(K::Delta); }
bool act_kind(const Proc& p, Action::Kind k) { return p.is(K::Act) && p.action().kind() == k; }

Proc act(const Action& a) { return Proc::action(a); }
Proc tau() { return act(Action::tau()); }
Proc delta() { return Proc::delta(); }
Proc eps() { return Proc::epsilon(); }
Proc alt(const Proc& x, const Proc& y) { return Proc::alt(x, y); }
Proc seq(const Proc& x, const Proc& y) { return Proc::seq(x, y); }
Proc par(const Proc& x, const Proc& y) { return Proc::par(x, y); }
Proc lm(const Proc& x, const Proc& y) { return Proc::leftmerge(x, y); }
Proc cm(const Proc& x, const Proc& y) { return Proc::commmerge(x, y); }
Proc grd(const Cond& c, const Proc& x) { return Proc::guard(c, x); }

// Pattern that puts exactly this action into a set.
ActionSet::Pattern pattern_for(const Action& a) {
  using P = ActionSet::Pattern;
  switch (a.kind()) {
    case Action::Kind::Assign: return {P::Kind::AssignTo, a.name(), 0};
    case Action::Kind::Param:
      return {P::Kind::NameArity, a.name(), static_cast<int>(a.args().size())};
    default: return {P::Kind::Name, a.name(), 0};
  }
}

ActionSet with(const ActionSet& s, const Action& a) {
  std::vector<ActionSet::Pattern> ps = s.patterns();
  ps.push_back(pattern_for(a));
  return ActionSet(std::move(ps));
}

Action non_tau(Gen& g) {
  Action a = g.action();
  while (a.is_tau()) a = g.action();
  return a;
}

// Action that is not in `s` (tau counts as outside every set).
Proc alpha_outside(Gen& g, const ActionSet& s) {
  for (int i = 0; i < 64; ++i) {
    Proc p = g.alpha();
    if (!p.is(K::Act) || !s.contains(p.action())) return p;
  }
  return tau();
}

Action evaluate_action(const Action& a, const EvalMap& m, const Carrier& c) {
  switch (a.kind()) {
    case Action::Kind::Param: {
      std::vector<Data> args;
      for (const auto& e : a.args()) args.push_back(evaluate_data(e, m, c));
      return Action::param(a.name(), std::move(args));
    }
    case Action::Kind::Assign:
      return Action::assign(a.name(), evaluate_data(a.value(), m, c));
    default: return a;
  }
}

Cond data_equalities(const Action& a, const Action& b) {
  Cond out = Cond::truth();
  for (std::size_t i = a.args().size(); i-- > 0;) {
    Cond eq = Cond::cmp(CmpOp::Eq, a.args()[i], b.args()[i]);
    out = out.is_true() ? eq : Cond::conj(eq, out);
  }
  return out;
}

Proc cm1e_rhs(const Proc& x, const Proc& y) {
  const ActionSet all = ActionSet::all();
  return alt(lm(x, y), alt(lm(y, x), alt(cm(x, y), seq(Proc::encap(all, x), Proc::encap(all, y)))));
}

// Data identities that hold under saturating arithmetic.
Data equal_variant(Gen& g, const Data& e) {
  switch (g.below(5)) {
    case 0: return Data::apply(DataOp::Add, e, Data::literal(0));
    case 1: return Data::apply(DataOp::Mul, Data::literal(1), e);
    case 2: return Data::apply(DataOp::Sub, e, Data::literal(0));
    case 3:
      if (e.kind() == Data::Kind::Apply && e.op() != DataOp::Sub)
        return Data::apply(e.op(), e.rhs(), e.lhs());
      return Data::apply(DataOp::Add, Data::literal(0), e);
    default: return Data::apply(DataOp::Mul, e, Data::literal(1));
  }
}

Cond equivalent_variant(Gen& g, const Cond& c) {
  switch (g.below(5)) {
    case 0: return Cond::negate(Cond::negate(c));
    case 1: return Cond::conj(c, c);
    case 2: return Cond::disj(c, Cond::falsity());
    case 3:
      if (c.kind() == Cond::Kind::And) return Cond::conj(c.rhs(), c.lhs());
      if (c.kind() == Cond::Kind::Or) return Cond::disj(c.rhs(), c.lhs());
      return Cond::conj(Cond::truth(), c);
    default:
      if (c.kind() == Cond::Kind::Cmp) {
        switch (c.cmp_op()) {
          case CmpOp::Lt: return Cond::negate(Cond::cmp(CmpOp::Ge, c.lhs_data(), c.rhs_data()));
          case CmpOp::Eq: return Cond::cmp(CmpOp::Eq, c.rhs_data(), c.lhs_data());
          case CmpOp::Le: return Cond::cmp(CmpOp::Ge, c.rhs_data(), c.lhs_data());
          default: break;
        }
      }
      return Cond::implies(Cond::truth(), c);
  }
}

FlexVarDecl vars_of(const std::vector<Data>& ds) {
  std::set<std::string> vs;
  for (const auto& d : ds) collect_flexible(d, vs);
  return FlexVarDecl(std::vector<std::string>(vs.begin(), vs.end()));
}

bool imp1_instance(const Proc& a, const Proc& b, const Signature& sig) {
  if (!a.is(K::Act) || !b.is(K::Act)) return false;
  const Action& x = a.action();
  const Action& y = b.action();
  if (x.kind() != y.kind() || x.name() != y.name() || x.args().size() != y.args().size())
    return false;
  for (std::size_t i = 0; i < x.args().size(); ++i) {
    const Data& e = x.args()[i];
    const Data& f = y.args()[i];
    if (e == f) continue;
    const FlexVarDecl decl = vars_of({e, f});
    if (!valid(Cond::cmp(CmpOp::Eq, e, f), decl, sig.carrier, sig.limits.enumeration))
      return false;
  }
  return true;
}

bool imp2_instance(const Proc& a, const Proc& b, const Signature& sig) {
  if (!a.is(K::Guard) || !b.is(K::Guard) || a.arg() != b.arg()) return false;
  std::set<std::string> vs;
  collect_flexible(a.cond(), vs);
  collect_flexible(b.cond(), vs);
  const FlexVarDecl decl(std::vector<std::string>(vs.begin(), vs.end()));
  return valid_iff(a.cond(), b.cond(), decl, sig.carrier, sig.limits.enumeration);
}

std::vector<Axiom> build() {
  std::vector<Axiom> ax;
  auto add = [&](std::string name, Axiom::Rewrite fwd, Axiom::Rewrite bwd,
                 std::function<AxiomInstance(Gen&)> inst) {
    ax.push_back(Axiom{std::move(name), std::move(fwd), std::move(bwd), std::move(inst), false});
  };
  const Axiom::Rewrite none;

  // Alternative and sequential composition.
  add("A1",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt)) return {};
        return alt(p.rhs(), p.lhs());
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt)) return {};
        return alt(p.rhs(), p.lhs());
      },
      [](Gen& g) {
        Proc x = g.term(3), y = g.term(3);
        return AxiomInstance{alt(x, y), alt(y, x)};
      });
  add("A2",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || !p.lhs().is(K::Alt)) return {};
        return alt(p.lhs().lhs(), alt(p.lhs().rhs(), p.rhs()));
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || !p.rhs().is(K::Alt)) return {};
        return alt(alt(p.lhs(), p.rhs().lhs()), p.rhs().rhs());
      },
      [](Gen& g) {
        Proc x = g.term(2), y = g.term(2), z = g.term(2);
        return AxiomInstance{alt(alt(x, y), z), alt(x, alt(y, z))};
      });
  add("A3",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || p.lhs() != p.rhs()) return {};
        return p.lhs();
      },
      [](const Proc& p, const Signature&) -> Opt { return alt(p, p); },
      [](Gen& g) {
        Proc x = g.term(3);
        return AxiomInstance{alt(x, x), x};
      });
  add("A4",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !p.lhs().is(K::Alt)) return {};
        return alt(seq(p.lhs().lhs(), p.rhs()), seq(p.lhs().rhs(), p.rhs()));
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || !p.lhs().is(K::Seq) || !p.rhs().is(K::Seq) ||
            p.lhs().rhs() != p.rhs().rhs())
          return {};
        return seq(alt(p.lhs().lhs(), p.rhs().lhs()), p.lhs().rhs());
      },
      [](Gen& g) {
        Proc x = g.term(2), y = g.term(2), z = g.term(2);
        return AxiomInstance{seq(alt(x, y), z), alt(seq(x, z), seq(y, z))};
      });
  add("A5",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !p.lhs().is(K::Seq)) return {};
        return seq(p.lhs().lhs(), seq(p.lhs().rhs(), p.rhs()));
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !p.rhs().is(K::Seq)) return {};
        return seq(seq(p.lhs(), p.rhs().lhs()), p.rhs().rhs());
      },
      [](Gen& g) {
        Proc x = g.term(2), y = g.term(2), z = g.term(2);
        return AxiomInstance{seq(seq(x, y), z), seq(x, seq(y, z))};
      });
  add("A6",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || !p.rhs().is(K::Delta)) return {};
        return p.lhs();
      },
      [](const Proc& p, const Signature&) -> Opt { return alt(p, delta()); },
      [](Gen& g) {
        Proc x = g.term(3);
        return AxiomInstance{alt(x, delta()), x};
      });
  add("A7",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !p.lhs().is(K::Delta)) return {};
        return delta();
      },
      none,
      [](Gen& g) { return AxiomInstance{seq(delta(), g.term(3)), delta()}; });
  add("A8",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !p.rhs().is(K::Epsilon)) return {};
        return p.lhs();
      },
      [](const Proc& p, const Signature&) -> Opt { return seq(p, eps()); },
      [](Gen& g) {
        Proc x = g.term(3);
        return AxiomInstance{seq(x, eps()), x};
      });
  add("A9",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !p.lhs().is(K::Epsilon)) return {};
        return p.rhs();
      },
      [](const Proc& p, const Signature&) -> Opt { return seq(eps(), p); },
      [](Gen& g) {
        Proc x = g.term(3);
        return AxiomInstance{seq(eps(), x), x};
      });

  // Merges.
  add("CM1E",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Par)) return {};
        return cm1e_rhs(p.lhs(), p.rhs());
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || !p.lhs().is(K::LeftMerge)) return {};
        const Proc x = p.lhs().lhs(), y = p.lhs().rhs();
        if (p != cm1e_rhs(x, y)) return {};
        return par(x, y);
      },
      [](Gen& g) {
        Proc x = g.term(3), y = g.term(3);
        return AxiomInstance{par(x, y), cm1e_rhs(x, y)};
      });
  add("CM2E",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::LeftMerge) || !p.lhs().is(K::Epsilon)) return {};
        return delta();
      },
      none, [](Gen& g) { return AxiomInstance{lm(eps(), g.term(3)), delta()}; });
  add("CM3",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::LeftMerge) || !p.lhs().is(K::Seq) || !is_alpha(p.lhs().lhs())) return {};
        return seq(p.lhs().lhs(), par(p.lhs().rhs(), p.rhs()));
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !is_alpha(p.lhs()) || !p.rhs().is(K::Par)) return {};
        return lm(seq(p.lhs(), p.rhs().lhs()), p.rhs().rhs());
      },
      [](Gen& g) {
        Proc a = g.alpha(), x = g.term(2), y = g.term(2);
        return AxiomInstance{lm(seq(a, x), y), seq(a, par(x, y))};
      });
  add("CM4",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::LeftMerge) || !p.lhs().is(K::Alt)) return {};
        return alt(lm(p.lhs().lhs(), p.rhs()), lm(p.lhs().rhs(), p.rhs()));
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || !p.lhs().is(K::LeftMerge) || !p.rhs().is(K::LeftMerge) ||
            p.lhs().rhs() != p.rhs().rhs())
          return {};
        return lm(alt(p.lhs().lhs(), p.rhs().lhs()), p.lhs().rhs());
      },
      [](Gen& g) {
        Proc x = g.term(2), y = g.term(2), z = g.term(2);
        return AxiomInstance{lm(alt(x, y), z), alt(lm(x, z), lm(y, z))};
      });
  add("CM5E",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::CommMerge) || !p.lhs().is(K::Epsilon)) return {};
        return delta();
      },
      none, [](Gen& g) { return AxiomInstance{cm(eps(), g.term(3)), delta()}; });
  add("CM6E",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::CommMerge) || !p.rhs().is(K::Epsilon)) return {};
        return delta();
      },
      none, [](Gen& g) { return AxiomInstance{cm(g.term(3), eps()), delta()}; });
  add("CM7",
      [](const Proc& p, const Signature& sig) -> Opt {
        if (!p.is(K::CommMerge) || !p.lhs().is(K::Seq) || !p.rhs().is(K::Seq)) return {};
        const Proc& l = p.lhs().lhs();
        const Proc& r = p.rhs().lhs();
        if (!act_kind(l, Action::Kind::Basic) || !act_kind(r, Action::Kind::Basic)) return {};
        auto c = sig.communicate(l.action(), r.action());
        const Proc head = c ? act(Action::basic(*c)) : delta();
        return seq(head, par(p.lhs().rhs(), p.rhs().rhs()));
      },
      none,
      [](Gen& g) {
        Action a = g.basic(), b = g.basic();
        Proc x = g.term(2), y = g.term(2);
        auto c = g.signature().communicate(a, b);
        return AxiomInstance{cm(seq(act(a), x), seq(act(b), y)),
                             seq(c ? act(Action::basic(*c)) : delta(), par(x, y))};
      });
  add("CM8",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::CommMerge) || !p.lhs().is(K::Alt)) return {};
        return alt(cm(p.lhs().lhs(), p.rhs()), cm(p.lhs().rhs(), p.rhs()));
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || !p.lhs().is(K::CommMerge) || !p.rhs().is(K::CommMerge) ||
            p.lhs().rhs() != p.rhs().rhs())
          return {};
        return cm(alt(p.lhs().lhs(), p.rhs().lhs()), p.lhs().rhs());
      },
      [](Gen& g) {
        Proc x = g.term(2), y = g.term(2), z = g.term(2);
        return AxiomInstance{cm(alt(x, y), z), alt(cm(x, z), cm(y, z))};
      });
  add("CM9",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::CommMerge) || !p.rhs().is(K::Alt)) return {};
        return alt(cm(p.lhs(), p.rhs().lhs()), cm(p.lhs(), p.rhs().rhs()));
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || !p.lhs().is(K::CommMerge) || !p.rhs().is(K::CommMerge) ||
            p.lhs().lhs() != p.rhs().lhs())
          return {};
        return cm(p.lhs().lhs(), alt(p.lhs().rhs(), p.rhs().rhs()));
      },
      [](Gen& g) {
        Proc x = g.term(2), y = g.term(2), z = g.term(2);
        return AxiomInstance{cm(x, alt(y, z)), alt(cm(x, y), cm(x, z))};
      });

  // Encapsulation and abstraction share their shape.
  for (const bool hide : {false, true}) {
    const std::string p = hide ? "T" : "D";
    const K kind = hide ? K::Abstr : K::Encap;
    auto wrap = [hide](const ActionSet& s, const Proc& x) {
      return hide ? Proc::abstr(s, x) : Proc::encap(s, x);
    };
    add(p + "0",
        [kind](const Proc& t, const Signature&) -> Opt {
          if (!t.is(kind) || !t.arg().is(K::Epsilon)) return {};
          return eps();
        },
        none, [wrap](Gen& g) { return AxiomInstance{wrap(g.action_set(), eps()), eps()}; });
    add(p + "1",
        [kind](const Proc& t, const Signature&) -> Opt {
          if (!t.is(kind) || !is_alpha(t.arg())) return {};
          if (t.arg().is(K::Act) && t.actions().contains(t.arg().action())) return {};
          return t.arg();
        },
        none,
        [wrap](Gen& g) {
          ActionSet s = g.action_set();
          Proc a = alpha_outside(g, s);
          return AxiomInstance{wrap(s, a), a};
        });
    add(p + "2",
        [kind, hide](const Proc& t, const Signature&) -> Opt {
          if (!t.is(kind) || !t.arg().is(K::Act) || !t.actions().contains(t.arg().action()))
            return {};
          return hide ? tau() : delta();
        },
        none,
        [wrap, hide](Gen& g) {
          Action a = non_tau(g);
          ActionSet s = with(g.action_set(), a);
          return AxiomInstance{wrap(s, act(a)), hide ? tau() : delta()};
        });
    for (const K inner : {K::Alt, K::Seq}) {
      const std::string n = p + (inner == K::Alt ? "3" : "4");
      add(n,
          [kind, inner, wrap](const Proc& t, const Signature&) -> Opt {
            if (!t.is(kind) || !t.arg().is(inner)) return {};
            return Proc::binary(inner, wrap(t.actions(), t.arg().lhs()),
                                wrap(t.actions(), t.arg().rhs()));
          },
          [kind, inner, wrap](const Proc& t, const Signature&) -> Opt {
            if (!t.is(inner) || !t.lhs().is(kind) || !t.rhs().is(kind) ||
                t.lhs().actions() != t.rhs().actions())
              return {};
            return wrap(t.lhs().actions(), Proc::binary(inner, t.lhs().arg(), t.rhs().arg()));
          },
          [inner, wrap](Gen& g) {
            ActionSet s = g.action_set();
            Proc x = g.term(2), y = g.term(2);
            return AxiomInstance{wrap(s, Proc::binary(inner, x, y)),
                                 Proc::binary(inner, wrap(s, x), wrap(s, y))};
          });
    }
  }

  // Branching axioms.
  auto be_lhs = [](const Proc& a, const Proc& x, const Proc& y) {
    return seq(a, alt(seq(tau(), alt(x, y)), x));
  };
  add("BE",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !is_alpha(p.lhs()) || !p.rhs().is(K::Alt)) return {};
        const Proc& s = p.rhs();
        if (!s.lhs().is(K::Seq) || s.lhs().lhs() != tau() || !s.lhs().rhs().is(K::Alt)) return {};
        const Proc& xy = s.lhs().rhs();
        if (xy.lhs() != s.rhs()) return {};
        return seq(p.lhs(), xy);
      },
      [be_lhs](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !is_alpha(p.lhs()) || !p.rhs().is(K::Alt)) return {};
        return be_lhs(p.lhs(), p.rhs().lhs(), p.rhs().rhs());
      },
      [be_lhs](Gen& g) {
        Proc a = g.alpha(), x = g.term(1), y = g.term(1);
        return AxiomInstance{be_lhs(a, x, y), seq(a, alt(x, y))};
      });
  auto bed_lhs = [](const Proc& a, const Cond& phi, const Proc& x, const Proc& y) {
    return seq(a, alt(grd(phi, seq(tau(), alt(x, y))), grd(phi, x)));
  };
  add("BED",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !is_alpha(p.lhs()) || !p.rhs().is(K::Alt)) return {};
        const Proc& s = p.rhs();
        if (!s.lhs().is(K::Guard) || !s.rhs().is(K::Guard) || s.lhs().cond() != s.rhs().cond())
          return {};
        const Proc& body = s.lhs().arg();
        if (!body.is(K::Seq) || body.lhs() != tau() || !body.rhs().is(K::Alt)) return {};
        if (body.rhs().lhs() != s.rhs().arg()) return {};
        return seq(p.lhs(), grd(s.lhs().cond(), body.rhs()));
      },
      [bed_lhs](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !is_alpha(p.lhs()) || !p.rhs().is(K::Guard) ||
            !p.rhs().arg().is(K::Alt))
          return {};
        const Proc& xy = p.rhs().arg();
        return bed_lhs(p.lhs(), p.rhs().cond(), xy.lhs(), xy.rhs());
      },
      [bed_lhs](Gen& g) {
        Proc a = g.alpha(), x = g.term(1), y = g.term(1);
        Cond phi = g.cond(2);
        return AxiomInstance{bed_lhs(a, phi, x, y), seq(a, grd(phi, alt(x, y)))};
      });

  // Guarded command.
  add("GC1",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Guard) || !p.cond().is_true()) return {};
        return p.arg();
      },
      [](const Proc& p, const Signature&) -> Opt { return grd(Cond::truth(), p); },
      [](Gen& g) {
        Proc x = g.term(3);
        return AxiomInstance{grd(Cond::truth(), x), x};
      });
  add("GC2",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Guard) || !p.cond().is_false()) return {};
        return delta();
      },
      none, [](Gen& g) { return AxiomInstance{grd(Cond::falsity(), g.term(3)), delta()}; });
  add("GC3",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Guard) || !p.arg().is(K::Delta)) return {};
        return delta();
      },
      none, [](Gen& g) { return AxiomInstance{grd(g.cond(3), delta()), delta()}; });
  add("GC4",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Guard) || !p.arg().is(K::Alt)) return {};
        return alt(grd(p.cond(), p.arg().lhs()), grd(p.cond(), p.arg().rhs()));
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || !p.lhs().is(K::Guard) || !p.rhs().is(K::Guard) ||
            p.lhs().cond() != p.rhs().cond())
          return {};
        return grd(p.lhs().cond(), alt(p.lhs().arg(), p.rhs().arg()));
      },
      [](Gen& g) {
        Cond c = g.cond(2);
        Proc x = g.term(2), y = g.term(2);
        return AxiomInstance{grd(c, alt(x, y)), alt(grd(c, x), grd(c, y))};
      });
  add("GC5",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Guard) || !p.arg().is(K::Seq)) return {};
        return seq(grd(p.cond(), p.arg().lhs()), p.arg().rhs());
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !p.lhs().is(K::Guard)) return {};
        return grd(p.lhs().cond(), seq(p.lhs().arg(), p.rhs()));
      },
      [](Gen& g) {
        Cond c = g.cond(2);
        Proc x = g.term(2), y = g.term(2);
        return AxiomInstance{grd(c, seq(x, y)), seq(grd(c, x), y)};
      });
  add("GC6",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Guard) || !p.arg().is(K::Guard)) return {};
        return grd(Cond::conj(p.cond(), p.arg().cond()), p.arg().arg());
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Guard) || p.cond().kind() != Cond::Kind::And) return {};
        return grd(p.cond().lhs(), grd(p.cond().rhs(), p.arg()));
      },
      [](Gen& g) {
        Cond c = g.cond(2), d = g.cond(2);
        Proc x = g.term(2);
        return AxiomInstance{grd(c, grd(d, x)), grd(Cond::conj(c, d), x)};
      });
  add("GC7",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Guard) || p.cond().kind() != Cond::Kind::Or) return {};
        return alt(grd(p.cond().lhs(), p.arg()), grd(p.cond().rhs(), p.arg()));
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || !p.lhs().is(K::Guard) || !p.rhs().is(K::Guard) ||
            p.lhs().arg() != p.rhs().arg())
          return {};
        return grd(Cond::disj(p.lhs().cond(), p.rhs().cond()), p.lhs().arg());
      },
      [](Gen& g) {
        Cond c = g.cond(2), d = g.cond(2);
        Proc x = g.term(3);
        return AxiomInstance{grd(Cond::disj(c, d), x), alt(grd(c, x), grd(d, x))};
      });
  struct Lift {
    const char* name;
    K outer;
    bool left;  // guard sits on the left operand
  };
  for (const Lift l : {Lift{"GC8", K::LeftMerge, true}, Lift{"GC9", K::CommMerge, true},
                       Lift{"GC10", K::CommMerge, false}}) {
    add(l.name,
        [l](const Proc& p, const Signature&) -> Opt {
          if (!p.is(l.outer)) return {};
          const Proc& gp = l.left ? p.lhs() : p.rhs();
          if (!gp.is(K::Guard)) return {};
          return grd(gp.cond(), l.left ? Proc::binary(l.outer, gp.arg(), p.rhs())
                                       : Proc::binary(l.outer, p.lhs(), gp.arg()));
        },
        [l](const Proc& p, const Signature&) -> Opt {
          if (!p.is(K::Guard) || !p.arg().is(l.outer)) return {};
          const Proc& in = p.arg();
          return l.left ? Proc::binary(l.outer, grd(p.cond(), in.lhs()), in.rhs())
                        : Proc::binary(l.outer, in.lhs(), grd(p.cond(), in.rhs()));
        },
        [l](Gen& g) {
          Cond c = g.cond(2);
          Proc x = g.term(2), y = g.term(2);
          Proc lhs = l.left ? Proc::binary(l.outer, grd(c, x), y)
                            : Proc::binary(l.outer, x, grd(c, y));
          return AxiomInstance{lhs, grd(c, Proc::binary(l.outer, x, y))};
        });
  }
  for (const bool hide : {false, true}) {
    const K kind = hide ? K::Abstr : K::Encap;
    auto wrap = [hide](const ActionSet& s, const Proc& x) {
      return hide ? Proc::abstr(s, x) : Proc::encap(s, x);
    };
    add(hide ? "GC12" : "GC11",
        [kind, wrap](const Proc& p, const Signature&) -> Opt {
          if (!p.is(kind) || !p.arg().is(K::Guard)) return {};
          return grd(p.arg().cond(), wrap(p.actions(), p.arg().arg()));
        },
        [kind, wrap](const Proc& p, const Signature&) -> Opt {
          if (!p.is(K::Guard) || !p.arg().is(kind)) return {};
          return wrap(p.arg().actions(), grd(p.cond(), p.arg().arg()));
        },
        [wrap](Gen& g) {
          ActionSet s = g.action_set();
          Cond c = g.cond(2);
          Proc x = g.term(2);
          return AxiomInstance{wrap(s, grd(c, x)), grd(c, wrap(s, x))};
        });
  }

  // Evaluation.
  add("V0",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Eval) || !p.arg().is(K::Epsilon)) return {};
        return eps();
      },
      none, [](Gen& g) { return AxiomInstance{Proc::eval(g.map(), eps()), eps()}; });
  struct Prefix {
    const char* name;
    Action::Kind kind;
  };
  for (const Prefix pf : {Prefix{"V1", Action::Kind::Tau}, Prefix{"V2", Action::Kind::Basic},
                          Prefix{"V3", Action::Kind::Param}, Prefix{"V4", Action::Kind::Assign}}) {
    const bool invertible = pf.kind == Action::Kind::Tau || pf.kind == Action::Kind::Basic;
    Axiom::Rewrite bwd;
    if (invertible)
      bwd = [pf](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Seq) || !act_kind(p.lhs(), pf.kind) || !p.rhs().is(K::Eval)) return {};
        return Proc::eval(p.rhs().map(), seq(p.lhs(), p.rhs().arg()));
      };
    add(pf.name,
        [pf](const Proc& p, const Signature& sig) -> Opt {
          if (!p.is(K::Eval) || !p.arg().is(K::Seq) || !act_kind(p.arg().lhs(), pf.kind))
            return {};
          const EvalMap& m = p.map();
          const Action a = evaluate_action(p.arg().lhs().action(), m, sig.carrier);
          const EvalMap next =
              pf.kind == Action::Kind::Assign ? m.updated(a.name(), a.value().value()) : m;
          return seq(act(a), Proc::eval(next, p.arg().rhs()));
        },
        bwd,
        [pf](Gen& g) {
          EvalMap m = g.map();
          Proc x = g.term(2);
          Action a = pf.kind == Action::Kind::Tau     ? Action::tau()
                     : pf.kind == Action::Kind::Basic ? g.basic()
                     : pf.kind == Action::Kind::Param ? g.param()
                                                      : g.assignment();
          // Independent spelling of the right-hand side.
          Proc rhs = seq(act(a), Proc::eval(m, x));
          if (pf.kind == Action::Kind::Param) {
            const Value d = eval_data(a.args().front(), m, g.signature().carrier);
            rhs = seq(act(Action::param(a.name(), {Data::literal(d)})), Proc::eval(m, x));
          } else if (pf.kind == Action::Kind::Assign) {
            const Value d = eval_data(a.value(), m, g.signature().carrier);
            rhs = seq(act(Action::assign(a.name(), Data::literal(d))),
                      Proc::eval(update_map(m, a.name(), d), x));
          }
          return AxiomInstance{Proc::eval(m, seq(act(a), x)), rhs};
        });
  }
  add("V5",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Eval) || !p.arg().is(K::Alt)) return {};
        return alt(Proc::eval(p.map(), p.arg().lhs()), Proc::eval(p.map(), p.arg().rhs()));
      },
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Alt) || !p.lhs().is(K::Eval) || !p.rhs().is(K::Eval) ||
            p.lhs().map() != p.rhs().map())
          return {};
        return Proc::eval(p.lhs().map(), alt(p.lhs().arg(), p.rhs().arg()));
      },
      [](Gen& g) {
        EvalMap m = g.map();
        Proc x = g.term(2), y = g.term(2);
        return AxiomInstance{Proc::eval(m, alt(x, y)), alt(Proc::eval(m, x), Proc::eval(m, y))};
      });
  add("V6",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::Eval) || !p.arg().is(K::Guard)) return {};
        return grd(substitute(p.arg().cond(), p.map()), Proc::eval(p.map(), p.arg().arg()));
      },
      none,
      [](Gen& g) {
        EvalMap m = g.map();
        Cond c = g.cond(2);
        Proc x = g.term(2);
        const bool holds = eval_cond(c, m, g.signature().carrier);
        // The instance fixes sigma(phi) by substitution; its truth value is
        // recorded separately by the suite through the semantics.
        (void)holds;
        return AxiomInstance{Proc::eval(m, grd(c, x)), grd(substitute(c, m), Proc::eval(m, x))};
      });

  // Communication with data.
  add("CM7Da",
      [](const Proc& p, const Signature& sig) -> Opt {
        if (!p.is(K::CommMerge) || !p.lhs().is(K::Seq) || !p.rhs().is(K::Seq)) return {};
        const Proc& l = p.lhs().lhs();
        const Proc& r = p.rhs().lhs();
        if (!act_kind(l, Action::Kind::Param) || !act_kind(r, Action::Kind::Param)) return {};
        auto c = sig.communicate(l.action(), r.action());
        if (!c) return {};
        return grd(data_equalities(l.action(), r.action()),
                   seq(act(Action::param(*c, l.action().args())),
                       par(p.lhs().rhs(), p.rhs().rhs())));
      },
      none,
      [](Gen& g) {
        const Data e = g.data(2), f = g.data(2);
        Proc x = g.term(2), y = g.term(2);
        const bool swap = g.chance(0.5);
        const Action a = Action::param(swap ? "r" : "s", {e});
        const Action b = Action::param(swap ? "s" : "r", {f});
        return AxiomInstance{
            cm(seq(act(a), x), seq(act(b), y)),
            grd(Cond::cmp(CmpOp::Eq, e, f), seq(act(Action::param("k", {e})), par(x, y)))};
      });
  add("CM7Db",
      [](const Proc& p, const Signature& sig) -> Opt {
        if (!p.is(K::CommMerge) || !p.lhs().is(K::Seq) || !p.rhs().is(K::Seq)) return {};
        const Proc& l = p.lhs().lhs();
        const Proc& r = p.rhs().lhs();
        if (!act_kind(l, Action::Kind::Param) || !act_kind(r, Action::Kind::Param)) return {};
        if (sig.communicate(l.action(), r.action())) return {};
        return delta();
      },
      none,
      [](Gen& g) {
        Action a = g.param(), b = g.param();
        while (g.signature().communicate(a, b)) b = g.param();
        return AxiomInstance{cm(seq(act(a), g.term(2)), seq(act(b), g.term(2))), delta()};
      });
  struct Block {
    const char* name;
    Action::Kind kind;
    bool left;  // the restricted action is on the left
  };
  for (const Block bl : {Block{"CM7Dc", Action::Kind::Param, true},
                         Block{"CM7Dd", Action::Kind::Param, false},
                         Block{"CM7De", Action::Kind::Assign, true},
                         Block{"CM7Df", Action::Kind::Assign, false}}) {
    const bool param = bl.kind == Action::Kind::Param;
    auto other_ok = [param](const Proc& a) {
      return is_alpha(a) && !(param && act_kind(a, Action::Kind::Param));
    };
    add(bl.name,
        [bl, other_ok](const Proc& p, const Signature&) -> Opt {
          if (!p.is(K::CommMerge) || !p.lhs().is(K::Seq) || !p.rhs().is(K::Seq)) return {};
          const Proc& mine = bl.left ? p.lhs().lhs() : p.rhs().lhs();
          const Proc& other = bl.left ? p.rhs().lhs() : p.lhs().lhs();
          if (!act_kind(mine, bl.kind) || !other_ok(other)) return {};
          return delta();
        },
        none,
        [bl, other_ok](Gen& g) {
          const Action mine = bl.kind == Action::Kind::Param ? g.param() : g.assignment();
          Proc other = g.alpha();
          while (!other_ok(other)) other = g.alpha();
          Proc x = g.term(2), y = g.term(2);
          Proc l = seq(act(mine), x), r = seq(other, y);
          return AxiomInstance{bl.left ? cm(l, r) : cm(r, l), delta()};
        });
  }

  // Recursion.
  add("RDP",
      [](const Proc& p, const Signature&) -> Opt {
        if (!p.is(K::RecConst)) return {};
        return close_over(p.spec()->rhs(p.name()), p.spec());
      },
      none,
      [](Gen& g) {
        Proc x = g.recursion();
        const auto& vars = x.spec()->vars();
        Proc y = Proc::recconst(vars[g.below(static_cast<int>(vars.size()))], x.spec());
        return AxiomInstance{y, close_over(y.spec()->rhs(y.name()), y.spec())};
      });

  // Data and condition identities.
  ax.push_back(Axiom{"IMP1", none, none,
                     [](Gen& g) {
                       const bool assign = g.chance(0.4);
                       Action a = assign ? g.assignment() : g.param();
                       const Data e = assign ? a.value() : a.args().front();
                       const Data f = equal_variant(g, e);
                       Action b = assign ? Action::assign(a.name(), f)
                                         : Action::param(a.name(), {f});
                       Proc x = g.term(2);
                       return AxiomInstance{seq(act(a), x), seq(act(b), x)};
                     },
                     true});
  ax.push_back(Axiom{"IMP2",
                     [](const Proc& p, const Signature& sig) -> Opt {
                       // Closed conditions reduce to their truth value.
                       if (!p.is(K::Guard) || p.cond().is_true() || p.cond().is_false() ||
                           has_flexible(p.cond()))
                         return {};
                       const bool v = eval_cond(p.cond(), EvalMap(), sig.carrier);
                       return grd(v ? Cond::truth() : Cond::falsity(), p.arg());
                     },
                     none,
                     [](Gen& g) {
                       Cond c = g.cond(2);
                       Proc x = g.term(3);
                       return AxiomInstance{grd(c, x), grd(equivalent_variant(g, c), x)};
                     },
                     true});
  return ax;
}

}  // namespace

const std::vector<Axiom>& axiom_catalogue() {
  static const std::vector<Axiom> catalogue = build();
  return catalogue;
}

const Axiom* find_axiom(const std::string& name) {
  for (const auto& a : axiom_catalogue())
    if (a.name == name) return &a;
  return nullptr;
}

bool is_axiom_instance(const Axiom& ax, const Proc& before, const Proc& after,
                       const Signature& sig) {
  if (ax.semantic) {
    const auto pos = difference_position(before, after);
    if (!pos) return false;
    const Proc& b = subterm(before, *pos);
    const Proc& a = subterm(after, *pos);
    return ax.name == "IMP1" ? imp1_instance(b, a, sig) : imp2_instance(b, a, sig);
  }
  if (!ax.forward) return false;
  if (auto r = ax.forward(before, sig); r && *r == after) return true;
  if (auto r = ax.forward(after, sig); r && *r == before) return true;
  return false;
}

}  // namespace deacp
