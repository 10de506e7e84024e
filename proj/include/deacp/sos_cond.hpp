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

// Condition-labelled operational semantics.

#pragma once

#include <vector>

#include "deacp/lts.hpp"

namespace deacp {

struct CondStep {
  Cond cond;
  Action action;
  Proc target;
};

/// Transitions of a closed term with satisfiable, normalised labels.
/// Satisfiability is decided over the maps of `table`.
std::vector<CondStep> step_cond(const Proc& t, const Signature& sig, CondTable& table);
std::vector<Cond> terminates_cond(const Proc& t, const Signature& sig, CondTable& table);

CondLts build_cond_lts(const Proc& t, const FlexVarDecl& decl, const Signature& sig);
CondLts build_cond_lts(const Proc& t, const Signature& sig);

/// Instantiates every label at each map that satisfies it.
SigmaLts expand_to_sigma(const CondLts& c, const Signature& sig);

}  // namespace deacp
