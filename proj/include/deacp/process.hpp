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

// Process terms, recursive specifications and the syntactic predicates on
// them (linearity, guardedness, reachability, classification).

#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "deacp/action.hpp"
#include "deacp/condition.hpp"

namespace deacp {

class ProcNode;
struct RecSpec;
using RecSpecPtr = std::shared_ptr<const RecSpec>;

class Proc {
 public:
  enum class Kind {
    Act, Delta, Epsilon, Alt, Seq, Par, LeftMerge, CommMerge,
    Encap, Abstr, Guard, Eval, RecVar, RecConst
  };

  static Proc action(Action a);
  static Proc delta();
  static Proc epsilon();
  static Proc alt(Proc p, Proc q);
  static Proc seq(Proc p, Proc q);
  static Proc par(Proc p, Proc q);
  static Proc leftmerge(Proc p, Proc q);
  static Proc commmerge(Proc p, Proc q);
  static Proc encap(ActionSet h, Proc p);
  static Proc abstr(ActionSet i, Proc p);
  static Proc guard(Cond c, Proc p);
  static Proc eval(EvalMap sigma, Proc p);
  static Proc recvar(std::string name);
  static Proc recconst(std::string name, RecSpecPtr spec);
  /// Binary constructor selected by kind.
  static Proc binary(Kind k, Proc p, Proc q);

  Kind kind() const;
  const Action& action() const;
  const Proc& lhs() const;
  const Proc& rhs() const;
  const Proc& arg() const;  // Encap, Abstr, Guard, Eval
  const ActionSet& actions() const;
  const Cond& cond() const;
  const EvalMap& map() const;
  const std::string& name() const;  // RecVar, RecConst
  const RecSpecPtr& spec() const;
  std::size_t child_count() const;
  const Proc& child(std::size_t i) const;
  /// Same node with children replaced.
  Proc with_children(std::vector<Proc> children) const;

  bool is_binary() const;
  bool is(Kind k) const { return kind() == k; }

  std::size_t hash() const;
  bool operator==(const Proc& o) const;
  bool operator!=(const Proc& o) const { return !(*this == o); }
  bool operator<(const Proc& o) const;

 private:
  explicit Proc(std::shared_ptr<const ProcNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ProcNode> node_;
  friend class ProcNode;
};

struct RecSpec {
  std::vector<std::pair<std::string, Proc>> equations;

  explicit RecSpec(std::vector<std::pair<std::string, Proc>> eqs);
  const Proc* find(const std::string& var) const;
  const Proc& rhs(const std::string& var) const;  // throws Declaration
  std::vector<std::string> vars() const;
  std::size_t hash() const { return hash_; }
  bool operator==(const RecSpec& o) const;

 private:
  std::size_t hash_;
};

/// <t|E>: every free recursion variable of E in t replaced by its constant.
Proc close_over(const Proc& t, const RecSpecPtr& spec);
/// Free recursion variables replaced by the given terms.
Proc substitute_vars(const Proc& t, const std::map<std::string, Proc>& theta);

std::vector<Proc> summands(const Proc& t);
bool is_linear(const Proc& t);
bool is_summand(const Proc& t);
bool is_guarded_linear_spec(const RecSpec& e);
/// Variables joined by a cycle of unguarded (tau-prefixed) occurrences.
std::vector<std::string> unguarded_cycle(const RecSpec& e);
std::set<std::string> reachable(const RecSpec& e, const std::string& x);

struct Classification {
  bool abstraction_free = true;
  bool bool_conditional = true;
  bool closed = true;
};
Classification classify(const Proc& t, const Signature& sig);

/// Flexible variables occurring outside every evaluation operator, i.e. the
/// ones whose value is supplied by the ambient map. Declaration order.
FlexVarDecl free_flexible(const Proc& t, const Signature& sig);
/// Every flexible variable occurring anywhere (including inside eval and
/// as assignment targets).
std::set<std::string> occurring_flexible(const Proc& t);
/// Every atomic action occurring (not tau).
std::set<Action> occurring_actions(const Proc& t);
void collect_conditions(const Proc& t, std::vector<Cond>& out);
std::set<std::string> free_recvars(const Proc& t);
bool has_abstraction(const Proc& t);

/// Data folded, epsilon units removed. Used for every explored state.
Proc canonical(const Proc& t, const Carrier& carrier);
/// Simplifying constructors used by the semantics.
Proc mk_seq(const Proc& p, const Proc& q);
Proc mk_par(const Proc& p, const Proc& q);
Proc mk_encap(const ActionSet& h, const Proc& p);
Proc mk_abstr(const ActionSet& i, const Proc& p);
Proc mk_eval(const EvalMap& sigma, const Proc& p);

std::size_t term_size(const Proc& t);
std::size_t term_depth(const Proc& t);

/// Positions address subterms by child index paths.
using Position = std::vector<std::size_t>;
const Proc& subterm(const Proc& t, const Position& pos);
Proc replace_at(const Proc& t, const Position& pos, const Proc& repl);
/// Longest common context: the innermost position where a and b differ
/// (empty if they differ at the root). nullopt when equal.
std::optional<Position> difference_position(const Proc& a, const Proc& b);

/// Builds a right-nested alternative composition; delta for no summands.
Proc alt_of(const std::vector<Proc>& terms);

std::string to_string(Proc::Kind k);

}  // namespace deacp

template <>
struct std::hash<deacp::Proc> {
  std::size_t operator()(const deacp::Proc& p) const { return p.hash(); }
};
