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

// Conditions (sort Cond): first-order formulas over data terms, decided by
// exhaustive enumeration over the finite carrier.

#pragma once

#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "deacp/data.hpp"

namespace deacp {

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

class CondNode;

class Cond {
 public:
  enum class Kind { True, False, Cmp, Not, And, Or, Implies, Iff, Forall, Exists };

  static Cond truth();
  static Cond falsity();
  static Cond cmp(CmpOp op, Data lhs, Data rhs);
  static Cond negate(Cond c);
  static Cond conj(Cond a, Cond b);
  static Cond disj(Cond a, Cond b);
  static Cond implies(Cond a, Cond b);
  static Cond iff(Cond a, Cond b);
  static Cond forall(std::string var, Cond body);
  static Cond exists(std::string var, Cond body);

  Kind kind() const;
  CmpOp cmp_op() const;
  const Data& lhs_data() const;
  const Data& rhs_data() const;
  const Cond& arg() const;   // Not, Forall, Exists
  const Cond& lhs() const;   // binary connectives
  const Cond& rhs() const;
  const std::string& var() const;  // quantifiers

  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }

  std::size_t hash() const;
  bool operator==(const Cond& o) const;
  bool operator!=(const Cond& o) const { return !(*this == o); }
  bool operator<(const Cond& o) const;

 private:
  explicit Cond(std::shared_ptr<const CondNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const CondNode> node_;
  friend class CondNode;
};

bool eval_cond(const Cond& c, const EvalMap& sigma, const Carrier& carrier);
bool eval_cond(const Cond& c, const EvalMap& sigma, const Carrier& carrier,
               BoundEnv& env);

/// phi <-> psi holds under every map over `decl`.
bool valid_iff(const Cond& phi, const Cond& psi, const FlexVarDecl& decl,
               const Carrier& carrier, std::size_t bound);
bool valid(const Cond& phi, const FlexVarDecl& decl, const Carrier& carrier,
           std::size_t bound);
bool satisfiable(const Cond& phi, const FlexVarDecl& decl,
                 const Carrier& carrier, std::size_t bound);

/// Smart conjunction: drops `true`, absorbs into `false`.
Cond conj_simplified(const Cond& a, const Cond& b);
/// Conjunction flattened, `true` removed, sorted and deduplicated.
Cond canonical_conj(const Cond& c);

/// sigma(phi): flexible variables replaced by literals.
Cond substitute(const Cond& c, const EvalMap& sigma);
/// Ground data folded to literals.
Cond fold(const Cond& c, const Carrier& carrier);

void collect_flexible(const Cond& c, std::set<std::string>& out);
bool has_flexible(const Cond& c);
/// Checks that data variables are bound by an enclosing quantifier.
void check_closed_data(const Cond& c);

std::string to_string(CmpOp op);
std::string to_string(const Cond& c);

/// Truth table of conditions over a fixed list of maps, memoised.
class CondTable {
 public:
  CondTable(std::vector<EvalMap> maps, Carrier carrier)
      : maps_(std::move(maps)), carrier_(carrier) {}

  const std::vector<EvalMap>& maps() const { return maps_; }
  const std::vector<bool>& extension(const Cond& c);
  bool satisfiable(const Cond& c);
  bool valid(const Cond& c);

 private:
  std::vector<EvalMap> maps_;
  Carrier carrier_;
  struct Hash {
    std::size_t operator()(const Cond& c) const { return c.hash(); }
  };
  std::unordered_map<Cond, std::vector<bool>, Hash> memo_;
};

}  // namespace deacp

template <>
struct std::hash<deacp::Cond> {
  std::size_t operator()(const deacp::Cond& c) const { return c.hash(); }
};
