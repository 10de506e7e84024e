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

// Random bisimilar pairs built from sound axiom rewrites, and the experiment
// comparing the two rooted bisimulation notions.

#pragma once

#include <string>
#include <vector>

#include "deacp/axioms.hpp"

namespace deacp {

struct PairGenConfig {
  TermGenConfig gen;
  int depth = 3;
  int rewrites = 4;
  std::size_t max_size = 60;
  /// Every generated left-hand side contains an abstraction node.
  bool require_abstraction = false;
};

struct GeneratedPair {
  Proc lhs;
  Proc rhs;
  std::vector<std::string> rules;  // rewrites applied, in order
};

/// True when the rewrite `redex` -> `result` by `rule` is an instance of a
/// schema known to be sound for these arguments.
bool sound_application(const std::string& rule, const Proc& redex, const Proc& result,
                       const Signature& sig);

class PairGenerator {
 public:
  PairGenerator(const Signature& sig, PairGenConfig cfg, std::uint64_t seed);

  /// One random rewrite somewhere in `t`; the term itself when none applies.
  Proc rewrite(const Proc& t, std::string* rule = nullptr);
  GeneratedPair next();
  TermGenerator& terms() { return gen_; }

 private:
  Proc hidden_recursion();

  const Signature& sig_;
  PairGenConfig cfg_;
  TermGenerator gen_;
};

struct ConjectureConfig {
  std::size_t pairs = 500;
  std::uint64_t seed = 1;
  int depth = 3;
  TermGenConfig gen;
};

struct ConjectureReport {
  struct Divergence {
    Proc lhs;
    Proc rhs;
    bool rb = false;
    bool ab = false;
  };
  std::size_t both_equivalent = 0;
  std::size_t both_inequivalent = 0;
  std::size_t rb_only = 0;
  std::size_t ab_only = 0;
  std::size_t skipped = 0;
  std::vector<Divergence> divergent;
  std::vector<std::string> notes;  // per-pair limit errors

  std::size_t decided() const { return both_equivalent + both_inequivalent + rb_only + ab_only; }
};

/// Mixes rewritten pairs, axiom instances, perturbed copies and independent
/// random terms; decides both equivalences on each.
ConjectureReport conjecture_experiment(const ConjectureConfig& cfg, const Signature& sig);

}  // namespace deacp
