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

// Equational certificates: axiom rewrites, recursion-principle steps, cluster
// fair abstraction lemmas, and their independent replay.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deacp/bisim.hpp"
#include "deacp/linearize.hpp"

namespace deacp {

struct ProofStep {
  enum class Kind {
    Axiom,  // one axiom instance at `position`
    Rsp,    // before = after by uniqueness of solutions of `spec`
    Cfar,   // side lemma; not part of the chain
    Close,  // witness relation between two recursion constants
  };
  Kind kind = Kind::Axiom;
  std::string rule;
  Proc before = Proc::delta();
  Proc after = Proc::delta();
  Position position;
  bool reversed = false;  // the axiom is used right to left

  // Rsp: the solution substituted for each variable of `spec`.
  RecSpecPtr spec;
  std::string var;
  std::vector<std::pair<std::string, Proc>> theta;

  std::optional<CfarApplication> cfar;

  std::vector<std::pair<Proc, Proc>> relation;  // Close

  bool lemma() const { return kind == Kind::Cfar; }
};

struct ProofCertificate {
  Proc lhs = Proc::delta();
  Proc rhs = Proc::delta();
  std::vector<ProofStep> steps;
};

struct ProofOutcome {
  std::optional<ProofCertificate> certificate;
  /// Set when the terms are not equivalent.
  std::optional<BisimResult> refutation;
};

/// Rewrites to a normal form with size-reducing and operator-eliminating
/// axioms; every step is recorded.
std::pair<Proc, std::vector<ProofStep>> normalize(const Proc& t, const Signature& sig,
                                                  std::size_t max_steps = 5000);

/// Both terms abstraction-free, or both with uniformly evaluating conditions;
/// throws Scope otherwise.
ProofOutcome prove_equal(const Proc& t1, const Proc& t2, const Signature& sig);

/// Re-checks every step independently of the prover. On failure `why` names
/// the first offending step.
bool replay_certificate(const ProofCertificate& c, const Signature& sig,
                        std::string* why = nullptr);

/// One step per line.
std::string render_certificate(const ProofCertificate& c);

}  // namespace deacp
