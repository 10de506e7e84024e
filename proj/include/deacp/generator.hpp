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

// Random closed terms over a fixed small signature.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "deacp/process.hpp"

namespace deacp {

struct TermGenConfig {
  std::vector<std::string> basic{"a", "b", "c"};
  std::vector<std::string> param{"s", "r", "k"};  // unary
  std::vector<std::string> vars{"v", "w"};
  bool abstraction = true;
  bool recursion = true;
  bool evaluation = true;
  bool merges = true;
  /// Every generated condition is valid or unsatisfiable.
  bool uniform_conditions = false;
  bool tau = true;
};

/// The signature the generator's terms live in: basic a, b, c with a|b = c,
/// unary s, r, k with s|r = k, variables v and w.
Signature generator_signature(Value lo = -4, Value hi = 3);

class TermGenerator {
 public:
  TermGenerator(const Signature& sig, TermGenConfig cfg, std::uint64_t seed);

  Proc term(int depth);
  Proc atom();
  /// An atomic action, tau included when enabled.
  Action action();
  Action basic();
  Action param();
  Action assignment();
  /// alpha ranging over atomic actions, tau and delta.
  Proc alpha();
  Data data(int depth = 2);
  Cond cond(int depth = 2);
  EvalMap map();
  ActionSet action_set();
  Proc recursion();

  int below(int n);
  bool chance(double p);
  std::mt19937_64& engine() { return rng_; }
  const Signature& signature() const { return sig_; }
  const TermGenConfig& config() const { return cfg_; }

 private:
  const Signature& sig_;
  TermGenConfig cfg_;
  std::mt19937_64 rng_;
  int spec_counter_ = 0;
};

}  // namespace deacp
