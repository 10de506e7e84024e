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

// The equational axioms as rewrite functions and random instance builders.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "deacp/generator.hpp"

namespace deacp {

struct AxiomInstance {
  Proc lhs;
  Proc rhs;
};

struct Axiom {
  using Rewrite = std::function<std::optional<Proc>(const Proc&, const Signature&)>;

  std::string name;
  /// Left-to-right rewrite at the root of the argument; empty on mismatch.
  Rewrite forward;
  /// Right-to-left rewrite, where the left side is determined by the right.
  Rewrite backward;
  /// Random closed instance; both sides are built from the same parts.
  std::function<AxiomInstance(TermGenerator&)> instance;
  /// The instance check is semantic (condition or data identity).
  bool semantic = false;
};

const std::vector<Axiom>& axiom_catalogue();
const Axiom* find_axiom(const std::string& name);

/// True when `after` arises from `before` by one application of the named
/// axiom at the root, in either direction.
bool is_axiom_instance(const Axiom& ax, const Proc& before, const Proc& after,
                       const Signature& sig);

/// Literal value sigma(e).
Data evaluate_data(const Data& e, const EvalMap& sigma, const Carrier& carrier);

}  // namespace deacp
