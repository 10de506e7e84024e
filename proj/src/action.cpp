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

#include "deacp/action.hpp"

#include <algorithm>
#include <sstream>

#include "deacp/errors.hpp"

namespace deacp {

Action::Action(Kind k, std::string name, std::vector<Data> args)
    : kind_(k), name_(std::move(name)), args_(std::move(args)) {
  std::size_t h = 0xac7 + static_cast<std::size_t>(kind_);
  h = hash_combine(h, std::hash<std::string>{}(name_));
  for (const auto& d : args_) h = hash_combine(h, d.hash());
  hash_ = h;
}

Action Action::basic(std::string name) { return Action(Kind::Basic, std::move(name), {}); }
Action Action::tau() { return Action(Kind::Tau, "tau", {}); }

Action Action::param(std::string name, std::vector<Data> args) {
  if (args.empty())
    throw Error(ErrorKind::Declaration,
                "parameterized action '" + name + "' needs an argument");
  return Action(Kind::Param, std::move(name), std::move(args));
}

Action Action::assign(std::string var, Data value) {
  return Action(Kind::Assign, std::move(var), {std::move(value)});
}

bool Action::is_ground() const {
  return std::all_of(args_.begin(), args_.end(),
                     [](const Data& d) { return d.is_ground(); });
}

bool Action::operator==(const Action& o) const {
  return hash_ == o.hash_ && kind_ == o.kind_ && name_ == o.name_ &&
         args_ == o.args_;
}

bool Action::operator<(const Action& o) const {
  if (kind_ != o.kind_) return kind_ < o.kind_;
  if (name_ != o.name_) return name_ < o.name_;
  return std::lexicographical_compare(args_.begin(), args_.end(),
                                      o.args_.begin(), o.args_.end());
}

Action substitute(const Action& a, const EvalMap& sigma) {
  switch (a.kind()) {
    case Action::Kind::Basic:
    case Action::Kind::Tau: return a;
    case Action::Kind::Param: {
      std::vector<Data> args;
      for (const auto& d : a.args()) args.push_back(substitute(d, sigma));
      return Action::param(a.name(), std::move(args));
    }
    case Action::Kind::Assign: return Action::assign(a.name(), substitute(a.value(), sigma));
  }
  return a;
}

Action fold(const Action& a, const Carrier& carrier) {
  switch (a.kind()) {
    case Action::Kind::Basic:
    case Action::Kind::Tau: return a;
    case Action::Kind::Param: {
      std::vector<Data> args;
      bool changed = false;
      for (const auto& d : a.args()) {
        args.push_back(fold(d, carrier));
        changed |= args.back() != d;
      }
      return changed ? Action::param(a.name(), std::move(args)) : a;
    }
    case Action::Kind::Assign: {
      Data v = fold(a.value(), carrier);
      return v == a.value() ? a : Action::assign(a.name(), std::move(v));
    }
  }
  return a;
}

void collect_flexible(const Action& a, std::set<std::string>& out) {
  for (const auto& d : a.args()) collect_flexible(d, out);
}

std::string to_string(const Action& a) {
  switch (a.kind()) {
    case Action::Kind::Basic: return a.name();
    case Action::Kind::Tau: return "tau";
    case Action::Kind::Param: {
      std::string s = a.name() + "(";
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (i) s += ", ";
        s += to_string(a.args()[i]);
      }
      return s + ")";
    }
    case Action::Kind::Assign: return a.name() + " := " + to_string(a.value());
  }
  return "?";
}

bool ActionSet::Pattern::operator<(const Pattern& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (name != o.name) return name < o.name;
  return arity < o.arity;
}

ActionSet::ActionSet(std::vector<Pattern> patterns) : patterns_(std::move(patterns)) {
  std::sort(patterns_.begin(), patterns_.end());
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
}

ActionSet ActionSet::all() { return ActionSet({Pattern{Pattern::Kind::All, "", 0}}); }

bool ActionSet::contains(const Action& a) const {
  if (a.is_tau()) return false;
  for (const auto& p : patterns_) {
    switch (p.kind) {
      case Pattern::Kind::All: return true;
      case Pattern::Kind::Name:
        if (a.kind() != Action::Kind::Assign && a.name() == p.name) return true;
        break;
      case Pattern::Kind::NameArity:
        if (a.kind() != Action::Kind::Assign && a.name() == p.name &&
            static_cast<int>(a.args().size()) == p.arity)
          return true;
        break;
      case Pattern::Kind::AssignTo:
        if (a.kind() == Action::Kind::Assign && a.name() == p.name) return true;
        break;
    }
  }
  return false;
}

std::size_t ActionSet::hash() const {
  std::size_t h = 0x5e7;
  for (const auto& p : patterns_) {
    h = hash_combine(h, static_cast<std::size_t>(p.kind));
    h = hash_combine(h, std::hash<std::string>{}(p.name));
    h = hash_combine(h, static_cast<std::size_t>(p.arity));
  }
  return h;
}

std::string to_string(const ActionSet& s) {
  std::string out;
  for (const auto& p : s.patterns()) {
    if (!out.empty()) out += ", ";
    switch (p.kind) {
      case ActionSet::Pattern::Kind::All: out += "*"; break;
      case ActionSet::Pattern::Kind::Name: out += p.name; break;
      case ActionSet::Pattern::Kind::NameArity:
        out += p.name + "/" + std::to_string(p.arity);
        break;
      case ActionSet::Pattern::Kind::AssignTo: out += p.name + ":="; break;
    }
  }
  return out;
}

void CommTable::add(const std::string& a, const std::string& b,
                    const std::string& c) {
  for (const auto& key : {std::make_pair(a, b), std::make_pair(b, a)}) {
    auto it = table_.find(key);
    if (it != table_.end() && it->second != c)
      throw Error(ErrorKind::Declaration, "communication " + a + "|" + b +
                                              " is defined twice with different results");
    table_[key] = c;
  }
}

std::optional<std::string> CommTable::lookup(const std::string& a,
                                             const std::string& b) const {
  auto it = table_.find({a, b});
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void CommTable::validate(const std::vector<std::string>& names) const {
  // Commutativity holds by construction of add(); check associativity of the
  // delta-extended function on every triple.
  auto g = [&](const std::optional<std::string>& x,
               const std::optional<std::string>& y) -> std::optional<std::string> {
    if (!x || !y) return std::nullopt;
    return lookup(*x, *y);
  };
  for (const auto& a : names)
    for (const auto& b : names)
      for (const auto& c : names) {
        auto l = g(g(a, b), c);
        auto r = g(a, g(b, c));
        if (l != r)
          throw Error(ErrorKind::Declaration,
                      "communication function is not associative on (" + a +
                          ", " + b + ", " + c + ")");
      }
}

int Signature::arity(const std::string& name) const {
  auto it = arities.find(name);
  if (it == arities.end())
    throw Error(ErrorKind::Declaration, "action '" + name + "' is not declared");
  return it->second;
}

std::vector<std::string> Signature::action_names() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : arities) out.push_back(n);
  return out;
}

std::optional<std::string> Signature::communicate(const Action& a,
                                                  const Action& b) const {
  const bool both_basic = a.kind() == Action::Kind::Basic && b.kind() == Action::Kind::Basic;
  const bool both_param = a.kind() == Action::Kind::Param && b.kind() == Action::Kind::Param &&
                          a.args().size() == b.args().size();
  if (!both_basic && !both_param) return std::nullopt;
  return comm.lookup(a.name(), b.name());
}

EvalMap Signature::complete_map(const std::vector<EvalMap::Entry>& partial) const {
  std::vector<EvalMap::Entry> entries;
  for (const auto& [k, v] : partial) {
    if (!vars.contains(k))
      throw Error(ErrorKind::Declaration, "flexible variable '" + k + "' is not declared");
    if (!carrier.contains(v))
      throw Error(ErrorKind::Declaration, "value " + std::to_string(v) + " for '" + k +
                                              "' lies outside the carrier");
  }
  const Value dflt = carrier.contains(0) ? 0 : carrier.lo;
  for (const auto& n : vars.names()) {
    auto it = std::find_if(partial.begin(), partial.end(),
                           [&](const EvalMap::Entry& e) { return e.first == n; });
    entries.emplace_back(n, it == partial.end() ? dflt : it->second);
  }
  return EvalMap(std::move(entries));
}

}  // namespace deacp
