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

// Atomic actions, action-set patterns, the communication function and the
// declarations shared by a specification.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deacp/condition.hpp"
#include "deacp/data.hpp"

namespace deacp {

class Action {
 public:
  enum class Kind { Basic, Tau, Param, Assign };

  static Action basic(std::string name);
  static Action tau();
  static Action param(std::string name, std::vector<Data> args);
  static Action assign(std::string var, Data value);

  Kind kind() const { return kind_; }
  /// Action name, or the assigned variable for assignments.
  const std::string& name() const { return name_; }
  const std::vector<Data>& args() const { return args_; }
  const Data& value() const { return args_.front(); }  // Assign
  bool is_tau() const { return kind_ == Kind::Tau; }
  bool is_ground() const;

  std::size_t hash() const { return hash_; }
  bool operator==(const Action& o) const;
  bool operator!=(const Action& o) const { return !(*this == o); }
  bool operator<(const Action& o) const;

 private:
  Action(Kind k, std::string name, std::vector<Data> args);
  Kind kind_;
  std::string name_;
  std::vector<Data> args_;
  std::size_t hash_;
};

Action substitute(const Action& a, const EvalMap& sigma);
Action fold(const Action& a, const Carrier& carrier);
void collect_flexible(const Action& a, std::set<std::string>& out);
std::string to_string(const Action& a);

/// Finite description of a set of atomic actions. `tau` is never a member.
class ActionSet {
 public:
  struct Pattern {
    enum class Kind { Name, NameArity, AssignTo, All };
    Kind kind;
    std::string name;
    int arity = 0;
    bool operator==(const Pattern&) const = default;
    bool operator<(const Pattern& o) const;
  };

  ActionSet() = default;
  explicit ActionSet(std::vector<Pattern> patterns);

  static ActionSet all();

  const std::vector<Pattern>& patterns() const { return patterns_; }
  bool contains(const Action& a) const;
  bool empty() const { return patterns_.empty(); }
  std::size_t hash() const;

  bool operator==(const ActionSet&) const = default;
  bool operator<(const ActionSet& o) const { return patterns_ < o.patterns_; }

 private:
  std::vector<Pattern> patterns_;  // sorted, deduplicated
};

std::string to_string(const ActionSet& s);

/// Commutative partial function on action names; undefined pairs mean delta.
class CommTable {
 public:
  void add(const std::string& a, const std::string& b, const std::string& c);
  std::optional<std::string> lookup(const std::string& a,
                                    const std::string& b) const;
  const std::map<std::pair<std::string, std::string>, std::string>& entries()
      const {
    return table_;
  }
  bool empty() const { return table_.empty(); }
  /// Throws a declaration error unless the delta-extended table is
  /// commutative and associative over `names`.
  void validate(const std::vector<std::string>& names) const;

  bool operator==(const CommTable&) const = default;

 private:
  std::map<std::pair<std::string, std::string>, std::string> table_;
};

/// Everything a term needs to be interpreted.
struct Signature {
  Carrier carrier;
  FlexVarDecl vars;
  std::map<std::string, int> arities;  // action name -> data arity
  CommTable comm;
  Limits limits;

  bool has_action(const std::string& name) const { return arities.count(name) > 0; }
  int arity(const std::string& name) const;
  std::vector<std::string> action_names() const;
  /// Result of synchronising two actions, if any.
  std::optional<std::string> communicate(const Action& a, const Action& b) const;
  /// Total map over the declared variables with unlisted ones defaulted.
  EvalMap complete_map(const std::vector<EvalMap::Entry>& partial) const;
};

}  // namespace deacp

template <>
struct std::hash<deacp::Action> {
  std::size_t operator()(const deacp::Action& a) const { return a.hash(); }
};
