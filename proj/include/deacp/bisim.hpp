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

// Rooted branching bisimulation on map-indexed systems and rooted
// ab-bisimulation on condition-labelled ones.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deacp/lts.hpp"

namespace deacp {

/// Canonical representative of a class of data-equivalent actions.
struct ActionClass {
  Action::Kind kind = Action::Kind::Tau;
  std::string name;  // action name, or the assigned variable
  std::vector<Value> values;

  bool operator==(const ActionClass&) const = default;
  auto operator<=>(const ActionClass&) const = default;
};

/// Evaluates remaining flexible variables under `sigma`; without a map the
/// arguments must be ground.
ActionClass action_class(const Action& a, const EvalMap* sigma, const Carrier& carrier);
std::string to_string(const ActionClass& c);

/// States reachable from `s` by tau-steps under map `map` (including `s`).
std::vector<std::size_t> silent_closure(const SigmaLts& l, std::size_t s, std::size_t map);

using StatePair = std::pair<std::size_t, std::size_t>;

struct Counterexample {
  struct Move {
    std::size_t map;
    std::string left_action;   // empty when the left side stays put
    std::string right_action;  // empty when the right side stays put
    StatePair reached;
  };
  std::vector<Move> trace;  // from the root pair to `pair`
  StatePair pair;
  bool at_root = false;      // violation of the root condition
  bool left_side = true;     // side owning the unmatched observation
  std::size_t map = 0;       // index into the shared map list
  std::optional<ActionClass> action;  // empty: termination
  std::size_t target = 0;    // successor state for a transition observation
  std::string description;
};

struct BisimResult {
  bool equivalent = false;
  std::vector<StatePair> relation;  // witness, sorted, when equivalent
  std::optional<Counterexample> counterexample;
};

/// Greatest-fixpoint pair refinement. Both systems must share their map list.
BisimResult rooted_branching_bisim(const SigmaLts& l1, const SigmaLts& l2,
                                   const Carrier& carrier);

/// Rooted ab-bisimulation: labels are split per satisfying map and every
/// intermediate state on a matching silent path must stay related.
BisimResult rooted_ab_bisim(const CondLts& c1, const CondLts& c2, const Signature& sig);

/// Checks a claimed witness against the four transfer conditions and the
/// root condition, independently of the refinement code. On failure `why`
/// receives a description.
bool verify_witness(const SigmaLts& l1, const SigmaLts& l2, const std::vector<StatePair>& rel,
                    const Carrier& carrier, std::string* why = nullptr);

/// Checks that the counterexample's observation exists and that its pair is
/// not related by the greatest bisimulation.
bool replay_counterexample(const SigmaLts& l1, const SigmaLts& l2, const Counterexample& cx,
                           const Carrier& carrier);

/// Strong bisimilarity of the roots by signature refinement on the disjoint
/// union. For tau-free systems this coincides with rooted branching
/// bisimilarity; throws a usage error when a tau-transition is present.
bool signature_bisim(const SigmaLts& l1, const SigmaLts& l2, const Carrier& carrier);

/// Builds both systems over the union of their free variables and decides
/// rooted branching bisimilarity.
BisimResult compare_terms(const Proc& t1, const Proc& t2, const Signature& sig,
                          SigmaLts* out1 = nullptr, SigmaLts* out2 = nullptr);
BisimResult compare_terms_ab(const Proc& t1, const Proc& t2, const Signature& sig);

}  // namespace deacp
