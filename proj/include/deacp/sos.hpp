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

// Map-indexed operational semantics and bounded state-space construction.

#pragma once

#include <vector>

#include "deacp/lts.hpp"

namespace deacp {

struct Step {
  Action action;
  Proc target;
};

/// Transitions of a closed term under `sigma`, in rule order. Labels outside
/// evaluation operators are left unevaluated.
std::vector<Step> step(const Proc& t, const EvalMap& sigma, const Signature& sig);
bool terminates(const Proc& t, const EvalMap& sigma, const Signature& sig);

/// Breadth-first closure from the canonical form of `t` over every map on
/// `decl`. States are numbered in discovery order.
SigmaLts build_lts(const Proc& t, const FlexVarDecl& decl, const Signature& sig);
/// As above with decl = the free flexible variables of `t`.
SigmaLts build_lts(const Proc& t, const Signature& sig);

}  // namespace deacp
