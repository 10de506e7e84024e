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

// Explored transition systems: sigma-indexed and condition-labelled.

#pragma once

#include <cstddef>
#include <vector>

#include "deacp/process.hpp"

namespace deacp {

struct SigmaLts {
  struct Transition {
    std::size_t from;
    std::size_t map;  // index into maps
    Action action;
    std::size_t to;
  };
  struct Termination {
    std::size_t state;
    std::size_t map;
  };

  std::vector<Proc> states;
  std::size_t root = 0;
  FlexVarDecl decl;
  std::vector<EvalMap> maps;
  std::vector<Transition> transitions;  // grouped by source, then map
  std::vector<Termination> terminating;

  std::size_t state_count() const { return states.size(); }
};

struct CondLts {
  struct Transition {
    std::size_t from;
    Cond cond;
    Action action;
    std::size_t to;
  };
  struct Termination {
    std::size_t state;
    Cond cond;
  };

  std::vector<Proc> states;
  std::size_t root = 0;
  FlexVarDecl decl;
  std::vector<Transition> transitions;
  std::vector<Termination> terminating;

  std::size_t state_count() const { return states.size(); }
};

/// Exploration-limit error carrying the partial statistics.
[[noreturn]] void throw_exploration_limit(std::size_t bound, std::size_t states,
                                          std::size_t transitions);

/// Bound from DEACP_STATE_BOUND when set, else `fallback`.
std::size_t state_bound_from_env(std::size_t fallback);

/// True when the two systems coincide after renaming states.
bool isomorphic(const SigmaLts& a, const SigmaLts& b);

}  // namespace deacp
