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

#include "deacp/data.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "deacp/errors.hpp"

namespace deacp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Declaration: return "declaration error";
    case ErrorKind::EnumerationLimit: return "enumeration limit";
    case ErrorKind::ExplorationLimit: return "exploration limit";
    case ErrorKind::MalformedCondition: return "malformed condition";
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::Guardedness: return "guardedness error";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::Scope: return "scope error";
    case ErrorKind::CfarInapplicable: return "CFAR inapplicable";
    case ErrorKind::Usage: return "usage error";
  }
  return "error";
}

class DataNode {
 public:
  Data::Kind kind;
  Value value = 0;
  std::string name;
  DataOp op = DataOp::Add;
  std::vector<Data> args;
  std::size_t hash = 0;

  static Data make(std::shared_ptr<DataNode> node) {
    std::size_t h = std::hash<int>{}(static_cast<int>(node->kind));
    switch (node->kind) {
      case Data::Kind::Literal:
        h = hash_combine(h, std::hash<Value>{}(node->value));
        break;
      case Data::Kind::Flexible:
      case Data::Kind::Bound:
        h = hash_combine(h, std::hash<std::string>{}(node->name));
        break;
      case Data::Kind::Apply:
        h = hash_combine(h, static_cast<std::size_t>(node->op));
        for (const auto& a : node->args) h = hash_combine(h, a.hash());
        break;
    }
    node->hash = h;
    return Data(std::move(node));
  }
};

std::vector<Value> Carrier::values() const {
  std::vector<Value> out;
  out.reserve(size());
  for (Value v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

Data Data::literal(Value v) {
  auto n = std::make_shared<DataNode>();
  n->kind = Kind::Literal;
  n->value = v;
  return DataNode::make(std::move(n));
}

Data Data::flexible(std::string name) {
  auto n = std::make_shared<DataNode>();
  n->kind = Kind::Flexible;
  n->name = std::move(name);
  return DataNode::make(std::move(n));
}

Data Data::bound(std::string name) {
  auto n = std::make_shared<DataNode>();
  n->kind = Kind::Bound;
  n->name = std::move(name);
  return DataNode::make(std::move(n));
}

Data Data::apply(DataOp op, Data lhs, Data rhs) {
  auto n = std::make_shared<DataNode>();
  n->kind = Kind::Apply;
  n->op = op;
  n->args = {std::move(lhs), std::move(rhs)};
  return DataNode::make(std::move(n));
}

Data::Kind Data::kind() const { return node_->kind; }
Value Data::value() const { return node_->value; }
const std::string& Data::name() const { return node_->name; }
DataOp Data::op() const { return node_->op; }
const Data& Data::lhs() const { return node_->args[0]; }
const Data& Data::rhs() const { return node_->args[1]; }
std::size_t Data::hash() const { return node_->hash; }

bool Data::is_ground() const {
  switch (kind()) {
    case Kind::Literal: return true;
    case Kind::Flexible:
    case Kind::Bound: return false;
    case Kind::Apply: return lhs().is_ground() && rhs().is_ground();
  }
  return false;
}

bool Data::operator==(const Data& o) const {
  if (node_ == o.node_) return true;
  if (node_->hash != o.node_->hash || kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::Literal: return value() == o.value();
    case Kind::Flexible:
    case Kind::Bound: return name() == o.name();
    case Kind::Apply:
      return op() == o.op() && lhs() == o.lhs() && rhs() == o.rhs();
  }
  return false;
}

bool Data::operator<(const Data& o) const {
  if (kind() != o.kind()) return kind() < o.kind();
  switch (kind()) {
    case Kind::Literal: return value() < o.value();
    case Kind::Flexible:
    case Kind::Bound: return name() < o.name();
    case Kind::Apply:
      if (op() != o.op()) return op() < o.op();
      if (lhs() != o.lhs()) return lhs() < o.lhs();
      return rhs() < o.rhs();
  }
  return false;
}

FlexVarDecl::FlexVarDecl(std::vector<std::string> names) {
  for (auto& n : names) add(n);
}

bool FlexVarDecl::contains(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

void FlexVarDecl::add(const std::string& name) {
  if (!contains(name)) names_.push_back(name);
}

FlexVarDecl FlexVarDecl::unite(const FlexVarDecl& a, const FlexVarDecl& b) {
  FlexVarDecl out = a;
  for (const auto& n : b.names()) out.add(n);
  return out;
}

EvalMap::EvalMap(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].first == entries_[i - 1].first)
      throw Error(ErrorKind::Declaration,
                  "evaluation map assigns '" + entries_[i].first + "' twice");
  }
}

std::optional<Value> EvalMap::find(const std::string& var) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), var,
      [](const Entry& e, const std::string& v) { return e.first < v; });
  if (it == entries_.end() || it->first != var) return std::nullopt;
  return it->second;
}

Value EvalMap::at(const std::string& var) const {
  if (auto v = find(var)) return *v;
  throw Error(ErrorKind::Declaration,
              "flexible variable '" + var + "' is not declared");
}

EvalMap EvalMap::updated(const std::string& var, Value d) const {
  EvalMap out = *this;
  for (auto& e : out.entries_) {
    if (e.first == var) {
      e.second = d;
      return out;
    }
  }
  throw Error(ErrorKind::Declaration,
              "cannot update undeclared flexible variable '" + var + "'");
}

EvalMap EvalMap::restricted(const FlexVarDecl& vars) const {
  EvalMap out;
  for (const auto& e : entries_)
    if (vars.contains(e.first)) out.entries_.push_back(e);
  return out;
}

std::size_t EvalMap::hash() const {
  std::size_t h = 0x51ed27;
  for (const auto& [k, v] : entries_) {
    h = hash_combine(h, std::hash<std::string>{}(k));
    h = hash_combine(h, std::hash<Value>{}(v));
  }
  return h;
}

Value apply_op(DataOp op, Value a, Value b, const Carrier& carrier) {
  __int128 r = 0;
  switch (op) {
    case DataOp::Add: r = static_cast<__int128>(a) + b; break;
    case DataOp::Sub: r = static_cast<__int128>(a) - b; break;
    case DataOp::Mul: r = static_cast<__int128>(a) * b; break;
  }
  if (r < carrier.lo) return carrier.lo;
  if (r > carrier.hi) return carrier.hi;
  return static_cast<Value>(r);
}

Value eval_data(const Data& e, const EvalMap& sigma, const Carrier& carrier) {
  static const BoundEnv empty;
  return eval_data(e, sigma, carrier, empty);
}

Value eval_data(const Data& e, const EvalMap& sigma, const Carrier& carrier,
                const BoundEnv& env) {
  switch (e.kind()) {
    case Data::Kind::Literal: return carrier.saturate(e.value());
    case Data::Kind::Flexible: return sigma.at(e.name());
    case Data::Kind::Bound:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == e.name()) return it->second;
      throw Error(ErrorKind::MalformedCondition,
                  "data variable '" + e.name() + "' is not bound");
    case Data::Kind::Apply:
      return apply_op(e.op(), eval_data(e.lhs(), sigma, carrier, env),
                      eval_data(e.rhs(), sigma, carrier, env), carrier);
  }
  return 0;
}

EvalMap update_map(const EvalMap& sigma, const std::string& var, Value d) {
  return sigma.updated(var, d);
}

std::size_t map_count(const FlexVarDecl& decl, const Carrier& carrier,
                      std::size_t bound) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < decl.size(); ++i) {
    if (count > bound / std::max<std::size_t>(carrier.size(), 1)) {
      throw Error(ErrorKind::EnumerationLimit,
                  "enumerating " + std::to_string(carrier.size()) + "^" +
                      std::to_string(decl.size()) +
                      " evaluation maps exceeds the bound of " +
                      std::to_string(bound));
    }
    count *= carrier.size();
  }
  if (count > bound)
    throw Error(ErrorKind::EnumerationLimit,
                "enumerating " + std::to_string(count) +
                    " evaluation maps exceeds the bound of " +
                    std::to_string(bound));
  return count;
}

std::vector<EvalMap> enumerate_maps(const FlexVarDecl& decl,
                                    const Carrier& carrier,
                                    std::size_t bound) {
  const std::size_t count = map_count(decl, carrier, bound);
  std::vector<EvalMap> out;
  out.reserve(count);
  const auto values = carrier.values();
  std::vector<std::size_t> digit(decl.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<EvalMap::Entry> entries;
    entries.reserve(decl.size());
    for (std::size_t i = 0; i < decl.size(); ++i)
      entries.emplace_back(decl.names()[i], values[digit[i]]);
    out.emplace_back(std::move(entries));
    // Last declared variable varies fastest.
    for (std::size_t i = decl.size(); i-- > 0;) {
      if (++digit[i] < values.size()) break;
      digit[i] = 0;
    }
  }
  return out;
}

Data substitute(const Data& e, const EvalMap& sigma) {
  switch (e.kind()) {
    case Data::Kind::Literal:
    case Data::Kind::Bound: return e;
    case Data::Kind::Flexible: return Data::literal(sigma.at(e.name()));
    case Data::Kind::Apply: {
      Data l = substitute(e.lhs(), sigma);
      Data r = substitute(e.rhs(), sigma);
      if (l == e.lhs() && r == e.rhs()) return e;
      return Data::apply(e.op(), std::move(l), std::move(r));
    }
  }
  return e;
}

Data fold(const Data& e, const Carrier& carrier) {
  switch (e.kind()) {
    case Data::Kind::Literal:
      return carrier.contains(e.value()) ? e
                                         : Data::literal(carrier.saturate(e.value()));
    case Data::Kind::Flexible:
    case Data::Kind::Bound: return e;
    case Data::Kind::Apply: {
      Data l = fold(e.lhs(), carrier);
      Data r = fold(e.rhs(), carrier);
      if (l.is_literal() && r.is_literal())
        return Data::literal(apply_op(e.op(), l.value(), r.value(), carrier));
      if (l == e.lhs() && r == e.rhs()) return e;
      return Data::apply(e.op(), std::move(l), std::move(r));
    }
  }
  return e;
}

void collect_flexible(const Data& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Data::Kind::Flexible: out.insert(e.name()); break;
    case Data::Kind::Apply:
      collect_flexible(e.lhs(), out);
      collect_flexible(e.rhs(), out);
      break;
    default: break;
  }
}

std::string to_string(DataOp op) {
  switch (op) {
    case DataOp::Add: return "+";
    case DataOp::Sub: return "-";
    case DataOp::Mul: return "*";
  }
  return "?";
}

namespace {

int precedence(DataOp op) { return op == DataOp::Mul ? 2 : 1; }

void render(std::ostream& os, const Data& e) {
  switch (e.kind()) {
    case Data::Kind::Literal: os << e.value(); break;
    case Data::Kind::Flexible:
    case Data::Kind::Bound: os << e.name(); break;
    case Data::Kind::Apply: {
      const int p = precedence(e.op());
      // Left-associative: the left operand needs parentheses only when it
      // binds weaker, the right operand also when it binds equally.
      const bool lp = e.lhs().kind() == Data::Kind::Apply &&
                      precedence(e.lhs().op()) < p;
      const bool rp = e.rhs().kind() == Data::Kind::Apply &&
                      precedence(e.rhs().op()) <= p;
      if (lp) os << '(';
      render(os, e.lhs());
      if (lp) os << ')';
      os << ' ' << to_string(e.op()) << ' ';
      if (rp) os << '(';
      render(os, e.rhs());
      if (rp) os << ')';
      break;
    }
  }
}

}  // namespace

std::string to_string(const Data& e) {
  std::ostringstream os;
  render(os, e);
  return os.str();
}

std::string to_string(const EvalMap& sigma) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, v] : sigma.entries()) {
    if (!first) os << ", ";
    first = false;
    os << k << " = " << v;
  }
  os << '}';
  return os.str();
}

}  // namespace deacp
