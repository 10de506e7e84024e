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

// Data sort: the finite integer carrier, data terms, flexible variables and
// evaluation maps.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace deacp {

using Value = std::int64_t;

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

/// Integer interval [lo, hi]. Arithmetic leaving the interval saturates.
struct Carrier {
  Value lo = -16;
  Value hi = 15;

  bool contains(Value v) const { return lo <= v && v <= hi; }
  Value saturate(Value v) const { return v < lo ? lo : (v > hi ? hi : v); }
  std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
  std::vector<Value> values() const;

  bool operator==(const Carrier&) const = default;
};

/// Resource bounds shared by every enumerating analysis.
struct Limits {
  std::size_t enumeration = 1u << 20;  // evaluation maps per enumeration
  std::size_t states = 100000;         // LTS states per exploration
};

enum class DataOp { Add, Sub, Mul };

class DataNode;

/// Immutable data term: literal, flexible variable, quantifier-bound data
/// variable, or a binary operator application.
class Data {
 public:
  enum class Kind { Literal, Flexible, Bound, Apply };

  static Data literal(Value v);
  static Data flexible(std::string name);
  static Data bound(std::string name);
  static Data apply(DataOp op, Data lhs, Data rhs);

  Kind kind() const;
  Value value() const;               // Literal
  const std::string& name() const;   // Flexible, Bound
  DataOp op() const;                 // Apply
  const Data& lhs() const;
  const Data& rhs() const;

  std::size_t hash() const;
  bool is_literal() const { return kind() == Kind::Literal; }
  /// No flexible and no bound variables.
  bool is_ground() const;

  bool operator==(const Data& other) const;
  bool operator!=(const Data& other) const { return !(*this == other); }
  bool operator<(const Data& other) const;

 private:
  explicit Data(std::shared_ptr<const DataNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const DataNode> node_;
  friend class DataNode;
};

/// Ordered, duplicate-free set of flexible-variable names.
class FlexVarDecl {
 public:
  FlexVarDecl() = default;
  explicit FlexVarDecl(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  bool contains(const std::string& name) const;
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  void add(const std::string& name);

  static FlexVarDecl unite(const FlexVarDecl& a, const FlexVarDecl& b);

  bool operator==(const FlexVarDecl&) const = default;

 private:
  std::vector<std::string> names_;
};

/// Finite mapping from flexible variables to values, kept sorted by name so
/// that structural equality is extensional equality.
class EvalMap {
 public:
  using Entry = std::pair<std::string, Value>;

  EvalMap() = default;
  explicit EvalMap(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::optional<Value> find(const std::string& var) const;
  /// Throws a declaration error for a variable outside the domain.
  Value at(const std::string& var) const;
  bool defines(const std::string& var) const { return find(var).has_value(); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// sigma<d/v>; v must already be in the domain.
  EvalMap updated(const std::string& var, Value d) const;
  /// Restriction to the given variables (those outside the domain are skipped).
  EvalMap restricted(const FlexVarDecl& vars) const;

  std::size_t hash() const;
  bool operator==(const EvalMap&) const = default;
  bool operator<(const EvalMap& o) const { return entries_ < o.entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Bound data variables in scope while evaluating quantified conditions.
using BoundEnv = std::vector<std::pair<std::string, Value>>;

Value apply_op(DataOp op, Value a, Value b, const Carrier& carrier);

Value eval_data(const Data& e, const EvalMap& sigma, const Carrier& carrier);
Value eval_data(const Data& e, const EvalMap& sigma, const Carrier& carrier,
                const BoundEnv& env);

EvalMap update_map(const EvalMap& sigma, const std::string& var, Value d);

/// Every total map over `decl`, lexicographic in (variable order, value
/// order). Throws EnumerationLimit when |carrier|^|decl| exceeds the bound.
std::vector<EvalMap> enumerate_maps(const FlexVarDecl& decl,
                                    const Carrier& carrier,
                                    std::size_t bound);
std::size_t map_count(const FlexVarDecl& decl, const Carrier& carrier,
                      std::size_t bound);

/// sigma(e): flexible variables replaced by their literals, no folding.
Data substitute(const Data& e, const EvalMap& sigma);
/// Ground subterms reduced to literals.
Data fold(const Data& e, const Carrier& carrier);

void collect_flexible(const Data& e, std::set<std::string>& out);

std::string to_string(DataOp op);
std::string to_string(const Data& e);
std::string to_string(const EvalMap& sigma);

}  // namespace deacp

template <>
struct std::hash<deacp::Data> {
  std::size_t operator()(const deacp::Data& d) const { return d.hash(); }
};
template <>
struct std::hash<deacp::EvalMap> {
  std::size_t operator()(const deacp::EvalMap& m) const { return m.hash(); }
};
