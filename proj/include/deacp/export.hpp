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

// Deterministic JSON renderings of every analysis result.

#pragma once

#include <string>

#include "deacp/pairgen.hpp"
#include "deacp/parser.hpp"
#include "deacp/proof.hpp"
#include "deacp/security.hpp"

namespace deacp {

std::string spec_json(const SpecFile& f);
std::string lts_json(const SigmaLts& l);
std::string cond_lts_json(const CondLts& l);
/// `l1`/`l2` resolve state and map indices; both null for condition systems.
std::string bisim_json(const BisimResult& r, const SigmaLts* l1, const SigmaLts* l2);
std::string linearization_json(const Linearization& l);
std::string clusters_json(const ClusterAnalysis& a);
std::string cfar_json(const CfarApplication& app);
std::string certificate_json(const ProofCertificate& c);
std::string outcome_json(const ProofOutcome& o);
std::string dnii_json(const DerivedSets& d, const DniiVerdict& v);
std::string conjecture_json(const ConjectureReport& r);

}  // namespace deacp
