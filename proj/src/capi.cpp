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

#include "deacp.h"

#include <memory>
#include <sstream>
#include <string>

#include "deacp/errors.hpp"
#include "deacp/export.hpp"
#include "deacp/sos.hpp"
#include "deacp/sos_cond.hpp"

using namespace deacp;

struct deacp_spec {
  SpecFile file;
};

struct deacp_result {
  int verdict = 1;
  std::string json;
  std::string text;
};

namespace {

thread_local std::string last_error;

deacp_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Declaration: return DEACP_ERR_DECLARATION;
    case ErrorKind::EnumerationLimit: return DEACP_ERR_ENUMERATION_LIMIT;
    case ErrorKind::ExplorationLimit: return DEACP_ERR_EXPLORATION_LIMIT;
    case ErrorKind::MalformedCondition: return DEACP_ERR_MALFORMED_CONDITION;
    case ErrorKind::Syntax: return DEACP_ERR_SYNTAX;
    case ErrorKind::Guardedness: return DEACP_ERR_GUARDEDNESS;
    case ErrorKind::Shape: return DEACP_ERR_SHAPE;
    case ErrorKind::Scope: return DEACP_ERR_SCOPE;
    case ErrorKind::CfarInapplicable: return DEACP_ERR_CFAR_INAPPLICABLE;
    case ErrorKind::Usage: return DEACP_ERR_USAGE;
  }
  return DEACP_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
deacp_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return DEACP_ERR_INTERNAL;
  }
}

deacp_status argument(const char* what) {
  last_error = std::string("missing argument: ") + what;
  return DEACP_ERR_ARGUMENT;
}

deacp_status emit(deacp_result** out, int verdict, std::string json, std::string text) {
  *out = new deacp_result{verdict, std::move(json), std::move(text)};
  return DEACP_OK;
}

std::string state_listing(const std::vector<Proc>& states) {
  std::ostringstream out;
  for (std::size_t i = 0; i < states.size(); ++i) out << "  s" << i << " = " << render(states[i]) << "\n";
  return out.str();
}

std::string equations_text(const RecSpec& e) {
  std::ostringstream out;
  for (const auto& [x, rhs] : e.equations) out << "  " << x << " = " << render(rhs) << "\n";
  return out.str();
}

std::string counterexample_text(const BisimResult& r) {
  if (!r.counterexample) return "not equivalent\n";
  return "not equivalent: " + r.counterexample->description + "\n";
}

ActionSet parse_set(const char* text, const SpecFile& f) {
  return parse_term(std::string("hide{") + text + "}(delta)", f).actions();
}

}  // namespace

extern "C" {

const char* deacp_version(void) { return "1.0.0"; }

const char* deacp_status_name(deacp_status s) {
  switch (s) {
    case DEACP_OK: return "ok";
    case DEACP_ERR_ARGUMENT: return "argument error";
    case DEACP_ERR_SYNTAX: return "syntax error";
    case DEACP_ERR_DECLARATION: return "declaration error";
    case DEACP_ERR_MALFORMED_CONDITION: return "malformed condition";
    case DEACP_ERR_ENUMERATION_LIMIT: return "enumeration limit";
    case DEACP_ERR_EXPLORATION_LIMIT: return "exploration limit";
    case DEACP_ERR_GUARDEDNESS: return "guardedness error";
    case DEACP_ERR_SHAPE: return "shape error";
    case DEACP_ERR_SCOPE: return "scope error";
    case DEACP_ERR_CFAR_INAPPLICABLE: return "cfar inapplicable";
    case DEACP_ERR_USAGE: return "usage error";
    case DEACP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* deacp_last_error(void) { return last_error.c_str(); }

deacp_status deacp_spec_parse(const char* text, const deacp_options* options, deacp_spec** out) {
  if (!text) return argument("text");
  if (!out) return argument("out");
  return guarded([&] {
    ParseOptions po;
    if (options && options->override_domain) {
      if (options->lo > options->hi) throw Error(ErrorKind::Usage, "empty domain");
      po.carrier = Carrier{static_cast<Value>(options->lo), static_cast<Value>(options->hi)};
    }
    auto spec = std::make_unique<deacp_spec>(deacp_spec{parse_spec(text, po)});
    auto& lim = spec->file.sig.limits;
    lim.states = options && options->state_bound ? options->state_bound
                                                 : state_bound_from_env(lim.states);
    *out = spec.release();
    return DEACP_OK;
  });
}

void deacp_spec_free(deacp_spec* spec) { delete spec; }

deacp_status deacp_spec_domain(const deacp_spec* spec, long* lo, long* hi) {
  if (!spec || !lo || !hi) return argument("spec, lo or hi");
  *lo = static_cast<long>(spec->file.sig.carrier.lo);
  *hi = static_cast<long>(spec->file.sig.carrier.hi);
  return DEACP_OK;
}

deacp_status deacp_describe(const deacp_spec* spec, deacp_result** out) {
  if (!spec || !out) return argument("spec");
  return guarded([&] {
    const SpecFile& f = spec->file;
    std::ostringstream text;
    text << "domain " << f.sig.carrier.lo << ".." << f.sig.carrier.hi << "\n";
    for (const auto& [n, p] : f.procs) text << "proc " << n << " = " << render(p) << "\n";
    return emit(out, 1, spec_json(f), text.str());
  });
}

deacp_status deacp_lts(const deacp_spec* spec, const char* process, int condition_labels,
                       deacp_result** out) {
  if (!spec || !out) return argument("spec");
  if (!process) return argument("process");
  return guarded([&] {
    const SpecFile& f = spec->file;
    const Proc& p = f.proc(process);
    std::ostringstream text;
    if (condition_labels) {
      const CondLts l = build_cond_lts(p, f.sig);
      text << l.state_count() << " states, " << l.transitions.size() << " transitions\n"
           << state_listing(l.states);
      for (const auto& t : l.transitions)
        text << "  s" << t.from << " --[" << to_string(t.cond) << "] " << to_string(t.action)
             << "--> s" << t.to << "\n";
      for (const auto& t : l.terminating)
        text << "  s" << t.state << " terminates under [" << to_string(t.cond) << "]\n";
      return emit(out, 1, cond_lts_json(l), text.str());
    }
    const SigmaLts l = build_lts(p, f.sig);
    text << l.state_count() << " states, " << l.transitions.size() << " transitions\n"
         << state_listing(l.states);
    for (const auto& t : l.transitions)
      text << "  s" << t.from << " --" << to_string(l.maps.at(t.map)) << " "
           << to_string(t.action) << "--> s" << t.to << "\n";
    for (const auto& t : l.terminating)
      text << "  s" << t.state << " terminates under " << to_string(l.maps.at(t.map)) << "\n";
    return emit(out, 1, lts_json(l), text.str());
  });
}

deacp_status deacp_bisim(const deacp_spec* spec, const char* left, const char* right, int ab,
                         deacp_result** out) {
  if (!spec || !out) return argument("spec");
  if (!left || !right) return argument("process");
  return guarded([&] {
    const SpecFile& f = spec->file;
    const Proc& p = f.proc(left);
    const Proc& q = f.proc(right);
    if (ab) {
      const BisimResult r = compare_terms_ab(p, q, f.sig);
      return emit(out, r.equivalent, bisim_json(r, nullptr, nullptr),
                  r.equivalent ? "equivalent\n" : counterexample_text(r));
    }
    SigmaLts l1, l2;
    const BisimResult r = compare_terms(p, q, f.sig, &l1, &l2);
    std::string text = r.equivalent ? "equivalent (witness of " +
                                          std::to_string(r.relation.size()) + " pairs)\n"
                                    : counterexample_text(r);
    return emit(out, r.equivalent, bisim_json(r, &l1, &l2), text);
  });
}

deacp_status deacp_linearize(const deacp_spec* spec, const char* process, deacp_result** out) {
  if (!spec || !out) return argument("spec");
  if (!process) return argument("process");
  return guarded([&] {
    const SpecFile& f = spec->file;
    const Proc& p = f.proc(process);
    const Linearization l =
        has_abstraction(p) ? normalize_bool_conditional(p, f.sig) : linearize(p, f.sig);
    std::ostringstream text;
    text << "root " << l.root << "\n" << equations_text(*l.spec);
    for (const auto& app : l.cfar)
      text << "cfar: " << render(app.before) << " = " << render(app.after) << "\n";
    return emit(out, 1, linearization_json(l), text.str());
  });
}

deacp_status deacp_cfar(const deacp_spec* spec, const char* recspec, const char* var,
                        const char* hidden, deacp_result** out) {
  if (!spec || !out) return argument("spec");
  if (!recspec || !var || !hidden) return argument("recspec, var or hidden");
  return guarded([&] {
    const SpecFile& f = spec->file;
    RecSpecPtr e;
    for (const auto& [n, s] : f.recspecs)
      if (n == recspec) e = s;
    if (!e) throw Error(ErrorKind::Usage, std::string("no recursive specification named ") + recspec);
    const ActionSet hide = parse_set(hidden, f);
    const CfarApplication app = apply_cfar(e, var, hide);
    std::ostringstream text;
    text << "cluster {";
    for (std::size_t i = 0; i < app.cluster.size(); ++i) text << (i ? ", " : "") << app.cluster[i];
    text << "}\nexits:\n";
    for (const auto& x : app.exits) text << "  " << render(x) << "\n";
    text << render(app.before) << "\n  = " << render(app.after) << "\n";
    return emit(out, 1, cfar_json(app), text.str());
  });
}

deacp_status deacp_prove(const deacp_spec* spec, const char* left, const char* right,
                         deacp_result** out) {
  if (!spec || !out) return argument("spec");
  if (!left || !right) return argument("process");
  return guarded([&] {
    const SpecFile& f = spec->file;
    const ProofOutcome o = prove_equal(f.proc(left), f.proc(right), f.sig);
    std::string text = o.certificate ? render_certificate(*o.certificate)
                                     : counterexample_text(*o.refutation);
    return emit(out, o.certificate.has_value(), outcome_json(o), text);
  });
}

deacp_status deacp_dnii(const deacp_spec* spec, const char* process, deacp_result** out) {
  if (!spec || !out) return argument("spec");
  if (!process) return argument("process");
  return guarded([&] {
    const SpecFile& f = spec->file;
    if (!f.security) throw Error(ErrorKind::Usage, "the file has no security section");
    const SecuritySpec s{f.proc(process), f.security->low, f.security->ext};
    const DerivedSets d = derive_sets(s, f.sig);
    const DniiVerdict v = check_dnii(s, f.sig);
    std::ostringstream text;
    if (v.holds) {
      text << "holds (" << v.comparisons << " comparisons)\n";
    } else {
      text << "fails\n  sigma  = " << to_string(*v.sigma) << "\n  sigma' = "
           << to_string(*v.sigma_prime) << "\n";
      if (v.counterexample) {
        for (const auto& m : v.counterexample->trace)
          text << "  " << (m.left_action.empty() ? "-" : m.left_action) << " / "
               << (m.right_action.empty() ? "-" : m.right_action) << "\n";
        text << "  " << v.counterexample->description << "\n";
      }
    }
    return emit(out, v.holds, dnii_json(d, v), text.str());
  });
}

deacp_status deacp_conjecture(size_t pairs, unsigned long long seed, long lo, long hi,
                              deacp_result** out) {
  if (!out) return argument("out");
  return guarded([&] {
    if (lo > hi) throw Error(ErrorKind::Usage, "empty domain");
    const Signature sig = generator_signature(static_cast<Value>(lo), static_cast<Value>(hi));
    ConjectureConfig cfg;
    cfg.pairs = pairs;
    cfg.seed = seed;
    const ConjectureReport r = conjecture_experiment(cfg, sig);
    std::ostringstream text;
    text << "pairs " << pairs << ", skipped " << r.skipped << "\n"
         << "                 ab equivalent   ab inequivalent\n"
         << "rb equivalent    " << r.both_equivalent << "\t\t" << r.rb_only << "\n"
         << "rb inequivalent  " << r.ab_only << "\t\t" << r.both_inequivalent << "\n";
    for (const auto& d : r.divergent)
      text << "divergent: " << render(d.lhs) << "  vs  " << render(d.rhs) << "\n";
    return emit(out, 1, conjecture_json(r), text.str());
  });
}

int deacp_result_verdict(const deacp_result* r) { return r ? r->verdict : 0; }
const char* deacp_result_json(const deacp_result* r) { return r ? r->json.c_str() : ""; }
const char* deacp_result_text(const deacp_result* r) { return r ? r->text.c_str() : ""; }
void deacp_result_free(deacp_result* r) { delete r; }

}  // extern "C"
