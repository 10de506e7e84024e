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

// Data non-interference with interactions: derived security sets and the
// pairwise check over evaluation maps that agree on the low variables.

#pragma once

#include <optional>
#include <set>
#include <string>

#include "deacp/bisim.hpp"

namespace deacp {

struct SecuritySpec {
  Proc process;
  std::set<std::string> low;
  ActionSet ext;
};

struct DerivedSets {
  std::set<std::string> high;
  std::set<Action> internal;
  std::set<Action> encapsulated;
  /// Name-and-arity patterns covering the corresponding action sets.
  ActionSet internal_set;
  ActionSet encapsulated_set;
};

/// Throws a declaration error when EXT covers assignments or LOW names an
/// undeclared variable.
DerivedSets derive_sets(const SecuritySpec& s, const Signature& sig);

/// hide_INT(eval_sigma(encap_ENC(P))).
Proc observable(const SecuritySpec& s, const DerivedSets& d, const EvalMap& sigma);

struct DniiVerdict {
  bool holds = true;
  std::optional<EvalMap> sigma;
  std::optional<EvalMap> sigma_prime;
  std::optional<Counterexample> counterexample;
  std::size_t comparisons = 0;
};

DniiVerdict check_dnii(const SecuritySpec& s, const Signature& sig);

/// Human-readable trace of a counterexample, one move per line.
std::string describe_trace(const Counterexample& cx, const SigmaLts& left);

}  // namespace deacp
