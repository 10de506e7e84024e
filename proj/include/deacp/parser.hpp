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

// Specification files: declarations, evaluation maps, recursive
// specifications, named processes and security sets; plus term rendering.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "deacp/process.hpp"

namespace deacp {

struct SecurityDecl {
  std::set<std::string> low;
  ActionSet ext;
};

struct SpecFile {
  Signature sig;
  std::vector<std::pair<std::string, EvalMap>> maps;
  std::vector<std::pair<std::string, RecSpecPtr>> recspecs;
  std::vector<std::pair<std::string, Proc>> procs;
  std::optional<SecurityDecl> security;

  const Proc* find_proc(const std::string& name) const;
  /// Throws a usage error naming the missing process.
  const Proc& proc(const std::string& name) const;
  const EvalMap* find_map(const std::string& name) const;
};

struct ParseOptions {
  /// Overrides the `domain` header when set.
  std::optional<Carrier> carrier;
};

SpecFile parse_spec(std::string_view text, const ParseOptions& options = {});

/// Parses a single process term against the declarations of `context`.
Proc parse_term(std::string_view text, const SpecFile& context);
Cond parse_condition(std::string_view text, const SpecFile& context);
Data parse_data(std::string_view text, const SpecFile& context);

/// Canonical text with minimal parentheses; parse_term inverts it.
std::string render(const Proc& t);

/// Rewrites a recursion right-hand side into linear form, adding the fresh
/// terminal equation named by `end_var` when a bare action ends a summand.
/// Returns the rewritten term and whether `end_var` was used.
std::pair<Proc, bool> linear_sugar(const Proc& rhs, const std::string& end_var);

}  // namespace deacp
