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

// Guarded linear recursive specifications from closed terms, cluster
// analysis and cluster fair abstraction.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "deacp/process.hpp"

namespace deacp {

/// One application of the cluster fair abstraction rule:
/// tau . hide_I(<var|spec>) = tau . hide_I(sum of <exit|spec>).
struct CfarApplication {
  RecSpecPtr spec;
  ActionSet hidden;
  std::string var;
  std::vector<std::string> cluster;
  std::vector<Proc> exits;  // summands over the variables of `spec`
  Proc before;
  Proc after;
};

struct Linearization {
  RecSpecPtr spec;
  std::string root;
  /// Closed term each variable stands for; theta[root] is the input term.
  std::map<std::string, Proc> theta;
  std::vector<CfarApplication> cfar;

  Proc constant() const { return Proc::recconst(root, spec); }
};

struct ClusterAnalysis {
  struct Cluster {
    std::vector<std::string> vars;
    std::vector<Proc> exits;
    bool conservative = false;
  };
  RecSpecPtr spec;
  ActionSet hidden;
  std::vector<Cluster> clusters;
};

/// Closed, abstraction-free input; embedded recursion constants must be
/// guarded linear.
Linearization linearize(const Proc& t, const Signature& sig);

/// Closed input whose conditions all evaluate uniformly; abstraction nodes
/// are eliminated through cluster collapsing.
Linearization normalize_bool_conditional(const Proc& t, const Signature& sig);

/// Maximal clusters: strongly connected groups under true-guarded I/tau
/// summands that satisfy the cluster condition; the remaining variables form
/// singleton clusters where the condition permits.
ClusterAnalysis analyze_clusters(const RecSpecPtr& e, const ActionSet& hidden);

/// Throws CfarInapplicable unless `x` lies in a conservative cluster.
CfarApplication apply_cfar(const RecSpecPtr& e, const std::string& x, const ActionSet& hidden);

/// Re-derives cluster, exits and both sides from the definitions.
bool check_cfar(const CfarApplication& app, std::string* why = nullptr);

/// Linear summand term phi :-> a . X or phi :-> epsilon.
Proc make_summand(const Cond& guard, const std::optional<Action>& action,
                  const std::string& target);

}  // namespace deacp
