// Copyright 2026 The qdn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>

#include "full_register.hpp"
#include "qdn/errors.hpp"
#include "qdn/evolution.hpp"
#include "qdn/modules.hpp"
#include "qdn/scenarios.hpp"
#include "support.hpp"

using namespace qdn;
using namespace qdn::testing;

namespace {

Expr lit(double v) { return Expr::literal(v); }
const double kH = 1.0 / std::sqrt(2.0);

StageMap wollaston_map() {
  auto s0 = make_stage(0, 2, 1, {{1, 1}, {2, 1}});
  auto s1 = make_stage(1, 2, 2, {{1, 1}, {2, 2}});
  return StageMap(s0, s1, wollaston_rules(*s0, 1, 1, 2));
}

// Plain in1 -> t out1 + ir out2 splitter on a single-SUO, two-detector stage.
StageMap splitter_map(Expr t, Expr r) {
  auto s0 = make_stage(0, 1, 2, {{1, 1}, {1, 2}});
  auto s1 = make_stage(1, 1, 2, {{1, 1}, {1, 2}});
  return StageMap(s0, s1, beamsplitter_rules(t, r, {1, 1}, {1, 2}, {1, 1}, {1, 2}));
}

}  // namespace

TEST_CASE("realize the Wollaston map", "[evolution]") {
  const auto m = realize(wollaston_map(), {});
  REQUIRE(m.entries.rows() == 2);
  REQUIRE(m.entries.cols() == 2);
  CHECK(m.entries.isApprox(Eigen::MatrixXcd::Identity(2, 2), 0.0));
  CHECK(semi_unitarity_defect(m) < 1e-12);
}

TEST_CASE("realize a symmetric beamsplitter", "[evolution]") {
  const auto m = realize(splitter_map(lit(kH), lit(kH)), {});
  // columns (1, i)/sqrt2 and (i, 1)/sqrt2
  CHECK(std::abs(m.entries(0, 0) - cd(kH, 0)) < 1e-15);
  CHECK(std::abs(m.entries(1, 0) - cd(0, kH)) < 1e-15);
  CHECK(std::abs(m.entries(0, 1) - cd(0, kH)) < 1e-15);
  CHECK(std::abs(m.entries(1, 1) - cd(kH, 0)) < 1e-15);
  CHECK(semi_unitarity_defect(m) < 1e-12);

  const auto bad = realize(splitter_map(lit(1), lit(1)), {});
  // U^dag U = [[2, 0], [0, 2]]
  CHECK(std::abs(semi_unitarity_defect(bad) - 1.0) < 1e-15);
}

TEST_CASE("empty map realizes to a 0x0 matrix", "[evolution]") {
  auto s0 = make_stage(0, 1, 1, {});
  auto s1 = make_stage(1, 1, 1, {});
  const auto m = realize(StageMap(s0, s1, {}), {});
  CHECK(m.entries.rows() == 0);
  CHECK(m.entries.cols() == 0);
  CHECK(semi_unitarity_defect(m) == 0.0);
}

TEST_CASE("StageMap construction errors", "[evolution]") {
  auto s0 = make_stage(0, 1, 2, {{1, 1}, {1, 2}});
  auto s1 = make_stage(1, 1, 2, {{1, 1}, {1, 2}});
  CHECK_THROWS_AS(StageMap(s0, s1, {{{1, 3}, {{{1, 1}, lit(1)}}}}), RuleError);
  CHECK_THROWS_AS(StageMap(s0, s1, {{{1, 1}, {{{1, 3}, lit(1)}}}}), RuleError);
  CHECK_THROWS_AS(StageMap(s0, s1, {{{1, 1}, {{{1, 1}, lit(1)}}},
                                    {{1, 1}, {{{1, 2}, lit(1)}}}}),
                  RuleError);

  // duplicate targets inside one rule are summed
  StageMap summed(s0, s1, {{{1, 1}, {{{1, 2}, lit(0.25)}, {{1, 2}, lit(0.5)}}},
                           {{1, 2}, {{{1, 1}, lit(1)}}}});
  const auto m = realize(summed, {});
  CHECK(std::abs(m.entries(1, 0) - 0.75) < 1e-15);
  CHECK(summed.rule_count() == 2);
}

TEST_CASE("incomplete maps and missing bindings", "[evolution]") {
  auto s0 = make_stage(0, 1, 2, {{1, 1}, {1, 2}});
  auto s1 = make_stage(1, 1, 2, {{1, 1}, {1, 2}});
  StageMap partial(s0, s1, {{{1, 1}, {{{1, 1}, lit(1)}}}});
  try {
    (void)realize(partial, {});
    FAIL("expected IncompleteMap");
  } catch (const IncompleteMap& e) {
    CHECK(std::string(e.what()).find("s1@{2}") != std::string::npos);
  }
  CHECK_THROWS_AS(realize(splitter_map(Expr::parameter("t"), lit(0)), {}), MissingBinding);
}

TEST_CASE("compose", "[evolution]") {
  const auto single = wollaston_map();
  const std::vector<StageMap> one = {single};
  CHECK(compose(one, {}).entries.isApprox(realize(single, {}).entries, 0.0));

  CHECK_THROWS_AS(compose(std::span<const StageMap>{}, {}), CompositionError);

  // stage 1 of the Wollaston map does not feed a splitter whose source is stage 0
  const std::vector<StageMap> mismatched = {wollaston_map(), splitter_map(lit(1), lit(0))};
  CHECK_THROWS_AS(compose(mismatched, {}), CompositionError);

  // two semi-unitary maps stay semi-unitary
  auto a = make_stage(0, 1, 2, {{1, 1}, {1, 2}});
  auto b = make_stage(1, 1, 2, {{1, 1}, {1, 2}});
  auto c = make_stage(2, 1, 3, {{1, 1}, {1, 2}, {1, 4}});
  const Expr t = cos(Expr::parameter("th")), r = sin(Expr::parameter("th"));
  std::vector<StageMap> chain;
  chain.emplace_back(a, b, beamsplitter_rules(t, r, {1, 1}, {1, 2}, {1, 1}, {1, 2}));
  chain.emplace_back(b, c, beamsplitter_rules(r, t, {1, 1}, {1, 2}, {1, 4}, {1, 1}));
  const auto u = compose(chain, {{"th", 0.37}});
  CHECK(u.entries.rows() == 3);
  CHECK(u.entries.cols() == 2);
  CHECK(semi_unitarity_defect(u) < 1e-10);
}

TEST_CASE("apply", "[evolution]") {
  const auto w = realize(wollaston_map(), {});
  const cd alpha(0.6, 0.1), beta(0.2, -0.7);
  Eigen::VectorXcd v(2);
  v << alpha, beta;
  const auto out = apply(w, EffectiveVector(w.source, v));
  CHECK(out.stage == w.target);
  CHECK(out[{1, 1}] == alpha);
  CHECK(out[{2, 2}] == beta);

  const auto zero = apply(w, EffectiveVector(w.source));
  CHECK(zero.squared_norm() == 0.0);

  const auto franson = build_scenario("franson_i");
  const auto u10 = realize(franson.maps[0], franson_binding(0, 0));
  const auto psi1 = apply(u10, initial_vector(franson, {}));
  CHECK(psi1[{1, labstate_label({1, 2})}] == cd(1.0));
  CHECK(psi1.squared_norm() == 1.0);

  CHECK_THROWS_AS(apply(w, EffectiveVector(u10.source)), DimensionError);
}

TEST_CASE("dimension theorem", "[evolution]") {
  auto s0 = make_stage(0, 1, 2, {{1, 1}, {1, 2}});
  auto s1 = make_stage(1, 1, 2, {{1, 3}});
  const Expr t = cos(Expr::parameter("th")), r = sin(Expr::parameter("th"));
  // Builds (no throw), but can never be semi-unitary.
  StageMap squeeze(s0, s1, {{{1, 1}, {{{1, 3}, t}}}, {{1, 2}, {{{1, 3}, r}}}});
  CHECK_FALSE(squeeze.dimension_admissible());
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    CHECK(semi_unitarity_defect(realize(squeeze, {{"th", rng.angle()}})) > 0.1);
  }
  CHECK(wollaston_map().dimension_admissible());
}

TEST_CASE("scenario maps are semi-unitary and norm-preserving", "[evolution][property]") {
  Rng rng(0xe701);
  for (const auto& name : scenario_names()) {
    const auto net = build_scenario(name);
    INFO(name);
    for (int trial = 0; trial < 50; ++trial) {
      const Binding b = random_binding(net, rng);
      for (const auto& map : net.maps) {
        REQUIRE(semi_unitarity_defect(realize(map, b)) < 1e-10);
      }
      const auto total = compose(net.maps, b);
      REQUIRE(semi_unitarity_defect(total) < 1e-10);
      const auto psi0 = initial_vector(net, b);
      const auto psi = apply(total, psi0);
      REQUIRE(std::abs(std::sqrt(psi.squared_norm()) - std::sqrt(psi0.squared_norm())) < 1e-10);
    }
  }
}

TEST_CASE("compose agrees with the dense full-register product", "[evolution][oracle]") {
  Rng rng(0xe702);
  for (const auto& name : scenario_names()) {
    const auto net = build_scenario(name);
    INFO(name);
    const auto& first = *net.initial_stage();
    const auto& last = *net.final_stage();
    for (int trial = 0; trial < 5; ++trial) {
      const Binding b = random_binding(net, rng);
      const auto u = compose(net.maps, b);
      const auto full = oracle::full_register_transition(net, b);
      REQUIRE(full.rows == last.full_dimension());
      REQUIRE(full.cols == first.full_dimension());

      // every effective entry matches, and nothing leaks outside the
      // effective block
      std::vector<bool> row_used(full.rows), col_used(full.cols);
      for (std::size_t j = 0; j < last.size(); ++j) {
        const auto& tj = last.basis()[j];
        const auto row = oracle::full_index(tj.suo_index, tj.label, last.register_rank());
        row_used[row] = true;
        for (std::size_t k = 0; k < first.size(); ++k) {
          const auto& sk = first.basis()[k];
          const auto col = oracle::full_index(sk.suo_index, sk.label, first.register_rank());
          col_used[col] = true;
          REQUIRE(std::abs(full(row, col) - u.entries(j, k)) < 1e-12);
        }
      }
      for (std::size_t r = 0; r < full.rows; ++r) {
        for (std::size_t c = 0; c < full.cols; ++c) {
          if (row_used[r] && col_used[c]) continue;
          REQUIRE(full(r, c) == cd(0.0));
        }
      }
    }
  }
}
