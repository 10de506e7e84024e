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

// Command-line front end; talks to the library only through its C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "deacp.h"

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kTrouble = 2;

struct Common {
  std::string path;
  std::optional<long> data_lo;
  std::optional<long> data_hi;
  std::size_t state_bound = 0;
  bool json = false;
};

struct SpecDeleter {
  void operator()(deacp_spec* s) const { deacp_spec_free(s); }
};
struct ResultDeleter {
  void operator()(deacp_result* r) const { deacp_result_free(r); }
};
using SpecHandle = std::unique_ptr<deacp_spec, SpecDeleter>;
using ResultHandle = std::unique_ptr<deacp_result, ResultDeleter>;

int report_failure(deacp_status s) {
  std::cerr << "deacp: " << deacp_status_name(s);
  if (*deacp_last_error()) std::cerr << ": " << deacp_last_error();
  std::cerr << "\n";
  return kTrouble;
}

std::optional<std::string> read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) return std::nullopt;
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Carrier bounds from the flags; a missing bound keeps `lo`/`hi`.
bool carrier_bounds(const Common& c, long& lo, long& hi) {
  if (c.data_lo) lo = *c.data_lo;
  if (c.data_hi) hi = *c.data_hi;
  if (lo > hi) {
    std::cerr << "deacp: --data-lo exceeds --data-hi\n";
    return false;
  }
  return true;
}

// Loads the spec file; on failure prints a diagnostic and returns the exit code.
std::variant<SpecHandle, int> load(const Common& c) {
  const auto text = read_input(c.path);
  if (!text) {
    std::cerr << "deacp: cannot read " << c.path << "\n";
    return kTrouble;
  }
  deacp_options opts{};
  if (c.data_lo || c.data_hi) {
    // A single bound keeps the other one from the file's domain header.
    deacp_spec* probe = nullptr;
    if (deacp_status s = deacp_spec_parse(text->c_str(), nullptr, &probe); s != DEACP_OK)
      return report_failure(s);
    deacp_spec_domain(probe, &opts.lo, &opts.hi);
    deacp_spec_free(probe);
    if (!carrier_bounds(c, opts.lo, opts.hi)) return kTrouble;
    opts.override_domain = 1;
  }
  opts.state_bound = c.state_bound;
  deacp_spec* spec = nullptr;
  if (deacp_status s = deacp_spec_parse(text->c_str(), &opts, &spec); s != DEACP_OK)
    return report_failure(s);
  return SpecHandle(spec);
}

int finish(deacp_status s, deacp_result* raw, bool json) {
  if (s != DEACP_OK) return report_failure(s);
  ResultHandle r(raw);
  std::cout << (json ? deacp_result_json(r.get()) : deacp_result_text(r.get()));
  return deacp_result_verdict(r.get()) ? kPositive : kNegative;
}

void add_common(CLI::App* cmd, Common& c, bool needs_file = true) {
  if (needs_file) cmd->add_option("file", c.path, "specification file, or - for stdin")->required();
  cmd->add_option("--data-lo", c.data_lo, "lowest carrier value");
  cmd->add_option("--data-hi", c.data_hi, "highest carrier value");
  cmd->add_option("--state-bound", c.state_bound, "maximum number of explored states");
  cmd->add_flag("--json", c.json, "machine-readable output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deacp: process algebra workbench"};
  app.require_subcommand(1);

  Common c;
  std::string process, left, right, recspec, var, hidden;
  bool conditions = false;
  std::size_t pairs = 500;
  unsigned long long seed = 1;

  auto* parse = app.add_subcommand("parse", "check a specification file and list its processes");
  add_common(parse, c);

  auto* lts = app.add_subcommand("lts", "build the transition system of a process");
  add_common(lts, c);
  lts->add_option("--process,-p", process, "process name")->required();
  lts->add_flag("--conditions", conditions, "condition-labelled semantics");

  auto* bisim = app.add_subcommand("bisim", "decide rooted branching bisimilarity");
  auto* ab = app.add_subcommand("ab-bisim", "decide rooted ab-bisimilarity");
  auto* prove = app.add_subcommand("prove", "derive an equation or refute it");
  for (auto* cmd : {bisim, ab, prove}) {
    add_common(cmd, c);
    cmd->add_option("--left,-l", left, "left process")->required();
    cmd->add_option("--right,-r", right, "right process")->required();
  }

  auto* lin = app.add_subcommand("linearize", "guarded linear recursive specification of a process");
  add_common(lin, c);
  lin->add_option("--process,-p", process, "process name")->required();

  auto* cfar = app.add_subcommand("cfar", "apply cluster fair abstraction to a recursive specification");
  add_common(cfar, c);
  cfar->add_option("--recspec", recspec, "recursive specification name")->required();
  cfar->add_option("--var", var, "variable in the cluster")->required();
  cfar->add_option("--hide", hidden, "hidden actions, e.g. \"a, b\"")->required();

  auto* dnii = app.add_subcommand("dnii", "check data non-interference");
  add_common(dnii, c);
  dnii->add_option("--process,-p", process, "process name")->required();

  auto* conj = app.add_subcommand("conjecture", "compare the two bisimulations on random pairs");
  add_common(conj, c, false);
  conj->add_option("--pairs", pairs, "number of pairs");
  conj->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kTrouble;
  }

  if (conj->parsed()) {
    long lo = -4, hi = 3;
    if (!carrier_bounds(c, lo, hi)) return kTrouble;
    deacp_result* r = nullptr;
    const deacp_status s = deacp_conjecture(pairs, seed, lo, hi, &r);
    return finish(s, r, c.json);
  }

  auto loaded = load(c);
  if (auto* code = std::get_if<int>(&loaded)) return *code;
  const deacp_spec* spec = std::get<SpecHandle>(loaded).get();
  deacp_result* r = nullptr;
  deacp_status s = DEACP_OK;
  if (parse->parsed()) s = deacp_describe(spec, &r);
  else if (lts->parsed()) s = deacp_lts(spec, process.c_str(), conditions, &r);
  else if (bisim->parsed()) s = deacp_bisim(spec, left.c_str(), right.c_str(), 0, &r);
  else if (ab->parsed()) s = deacp_bisim(spec, left.c_str(), right.c_str(), 1, &r);
  else if (prove->parsed()) s = deacp_prove(spec, left.c_str(), right.c_str(), &r);
  else if (lin->parsed()) s = deacp_linearize(spec, process.c_str(), &r);
  else if (cfar->parsed()) s = deacp_cfar(spec, recspec.c_str(), var.c_str(), hidden.c_str(), &r);
  else if (dnii->parsed()) s = deacp_dnii(spec, process.c_str(), &r);
  return finish(s, r, c.json);
}
