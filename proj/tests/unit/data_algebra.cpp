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

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "deacp/errors.hpp"
#include "deacp/generator.hpp"
#include "support.hpp"

using namespace deacp;

TEST_SUITE("data_algebra") {
  const SpecFile sub = parse_spec("domain -16..15; vars d, i, j;");
  const EvalMap sigma({{"d", 0}, {"i", 11}, {"j", 3}});

  TEST_CASE("flexible variable evaluates to its map value") {
    CHECK(eval_data(parse_data("i", sub), sigma, sub.sig.carrier) == 11);
  }

  TEST_CASE("literal ignores the map") {
    CHECK(eval_data(Data::literal(5), sigma, sub.sig.carrier) == 5);
    CHECK(eval_data(Data::literal(5), EvalMap{}, sub.sig.carrier) == 5);
  }

  TEST_CASE("difference of two variables") {
    CHECK(eval_data(parse_data("i - j", sub), sigma, sub.sig.carrier) == 8);
  }

  TEST_CASE("arithmetic saturates at the carrier bounds") {
    const Carrier& c = sub.sig.carrier;
    CHECK(eval_data(parse_data("i + i", sub), sigma, c) == 15);
    CHECK(eval_data(parse_data("0 - i - i", sub), sigma, c) == -16);
    CHECK(eval_data(parse_data("i * j", sub), sigma, c) == 15);
    CHECK(apply_op(DataOp::Mul, -16, 2, c) == -16);
  }

  TEST_CASE("undeclared variable is a declaration error") {
    try {
      (void)parse_data("zz + 1", sub);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Declaration);
    }
    try {
      (void)eval_data(Data::flexible("zz"), sigma, sub.sig.carrier);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Declaration);
    }
  }

  TEST_CASE("update_map") {
    const EvalMap u = update_map(sigma, "j", 7);
    CHECK(u.at("i") == 11);
    CHECK(u.at("j") == 7);
    CHECK(update_map(sigma, "j", sigma.at("j")) == sigma);
    CHECK(update_map(sigma, "d", 11).at("d") == 11);
  }

  TEST_CASE("update then evaluate, randomized") {
    const Signature sig = generator_signature();
    TermGenerator g(sig, TermGenConfig{}, 3);
    for (int n = 0; n < 300; ++n) {
      const EvalMap s = g.map();
      const Value d = sig.carrier.lo + g.below(static_cast<int>(sig.carrier.size()));
      const EvalMap u = update_map(s, "v", d);
      CHECK(eval_data(Data::flexible("v"), u, sig.carrier) == d);
      CHECK(eval_data(Data::flexible("w"), u, sig.carrier) == s.at("w"));
      const Data e = g.data(3);
      CHECK(eval_data(e, s, sig.carrier) == eval_data(e, s, sig.carrier));
      CHECK(sig.carrier.contains(eval_data(e, s, sig.carrier)));
    }
  }

  TEST_CASE("enumeration of a single variable") {
    const auto maps = enumerate_maps(FlexVarDecl({"v"}), Carrier{0, 1}, 1000);
    REQUIRE(maps.size() == 2);
    CHECK(maps[0] == EvalMap({{"v", 0}}));
    CHECK(maps[1] == EvalMap({{"v", 1}}));
  }

  TEST_CASE("enumeration of no variables is the empty map") {
    const auto maps = enumerate_maps(FlexVarDecl{}, Carrier{0, 1}, 1000);
    REQUIRE(maps.size() == 1);
    CHECK(maps[0].empty());
  }

  TEST_CASE("enumeration is lexicographic") {
    const auto maps = enumerate_maps(FlexVarDecl({"u", "v"}), Carrier{0, 1}, 1000);
    REQUIRE(maps.size() == 4);
    CHECK(maps.front() == EvalMap({{"u", 0}, {"v", 0}}));
    CHECK(maps[1] == EvalMap({{"u", 0}, {"v", 1}}));
    CHECK(maps.back() == EvalMap({{"u", 1}, {"v", 1}}));
  }

  TEST_CASE("enumeration yields carrier^vars distinct maps") {
    for (int k = 0; k <= 3; ++k)
      for (Value hi : {0, 2, 3}) {
        std::vector<std::string> names;
        for (int i = 0; i < k; ++i) names.push_back("x" + std::to_string(i));
        const Carrier c{-1, hi};
        const auto maps = enumerate_maps(FlexVarDecl(names), c, 1u << 20);
        const std::set<EvalMap> distinct(maps.begin(), maps.end());
        const auto expected = static_cast<std::size_t>(std::pow(c.size(), k));
        CHECK(maps.size() == expected);
        CHECK(distinct.size() == expected);
        CHECK(map_count(FlexVarDecl(names), c, 1u << 20) == expected);
      }
  }

  TEST_CASE("enumeration limit") {
    try {
      (void)enumerate_maps(FlexVarDecl({"a", "b", "c"}), Carrier{0, 9}, 999);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EnumerationLimit);
    }
  }
}
