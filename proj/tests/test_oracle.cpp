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
#include <functional>

#include "full_register.hpp"
#include "qdn/scenarios.hpp"
#include "support.hpp"

using namespace qdn;
using namespace qdn::testing;

namespace {

double max_rate_gap(const std::map<Label, double>& a, const std::map<Label, double>& b) {
  double gap = 0.0;
  for (const auto& [l, p] : a) gap = std::max(gap, std::abs(p - (b.count(l) ? b.at(l) : 0.0)));
  for (const auto& [l, p] : b) gap = std::max(gap, std::abs(p - (a.count(l) ? a.at(l) : 0.0)));
  return gap;
}

// Rates over an 8x8 (phi1, phi2) grid with symmetric splitters, compared
// against closed forms keyed by detector pair.
using Golden = std::function<double(double, double)>;

void check_golden(const char* scenario, const std::map<Label, Golden>& expected) {
  const auto net = build_scenario(scenario);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const double phi1 = 2 * kPi * i / 8, phi2 = 2 * kPi * j / 8;
      const auto b = franson_binding(phi1, phi2);
      const auto rates = evaluate(net, b).rates;
      const auto brute = oracle::rates_by_label(oracle::full_register_evolve(net, b));
      INFO(scenario << " phi1=" << phi1 << " phi2=" << phi2);
      double total = 0.0;
      for (const auto& [label, f] : expected) {
        const double want = f(phi1, phi2);
        INFO("label " << label);
        REQUIRE(std::abs(coincidence_rate(rates, label_detectors(label)) - want) < 1e-10);
        REQUIRE(std::abs((brute.count(label) ? brute.at(label) : 0.0) - want) < 1e-10);
        total += want;
      }
      // the listed labels exhaust the probability
      REQUIRE(std::abs(total - 1.0) < 1e-10);
      REQUIRE(std::abs(total_probability(rates) - 1.0) < 1e-10);
    }
  }
}

Label pair(int a, int b) { return labstate_label({a, b}); }

}  // namespace

TEST_CASE("oracle: Wollaston amplitudes land in the full register", "[oracle]") {
  const cd alpha(0.6, 0.0), beta(0.0, 0.8);
  Binding b;
  bind_alpha_beta(b, alpha, beta);
  const auto s = oracle::full_register_evolve(build_scenario("wollaston"), b);
  CHECK(s.suo_dim == 2);
  CHECK(s.rank == 2);
  REQUIRE(s.amplitudes.size() == 8);
  CHECK(s.at(1, 1) == alpha);
  CHECK(s.at(2, 2) == beta);
  double rest = 0.0;
  for (const auto& a : s.amplitudes) rest += std::norm(a);
  CHECK(std::abs(rest - 1.0) < 1e-15);
}

TEST_CASE("oracle: a network without maps leaves the state alone", "[oracle]") {
  NetworkDescription net;
  net.name = "still";
  net.stages = {make_stage(0, 2, 2, {{1, 1}, {2, 3}})};
  net.initial_state = {{{1, 1}, Expr::literal(0.6)},
                       {{2, 3}, Expr::literal(0.8) * Expr::imaginary_unit()}};
  const auto s = oracle::full_register_evolve(net, {});
  REQUIRE(s.amplitudes.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) {
    const cd want = k == oracle::full_index(1, 1, 2)   ? cd(0.6)
                    : k == oracle::full_index(2, 3, 2) ? cd(0, 0.8)
                                                       : cd(0);
    CHECK(s.amplitudes[k] == want);
  }
  const auto rates = evaluate(net, {}).rates;
  CHECK(max_rate_gap(rates.rates, oracle::rates_by_label(s)) < 1e-15);
}

TEST_CASE("oracle: rank cap", "[oracle]") {
  NetworkDescription net;
  net.name = "wide";
  net.stages = {make_stage(0, 1, 11, {{1, 1}})};
  net.initial_state = {{{1, 1}, Expr::literal(1.0)}};
  CHECK_THROWS_AS(oracle::full_register_evolve(net, {}), std::length_error);
}

TEST_CASE("oracle: Franson i at quarter phases", "[oracle]") {
  const auto net = build_scenario("franson_i");
  const auto b = franson_binding(kPi / 2, kPi / 2);
  const auto rates = evaluate(net, b).rates;
  const auto brute = oracle::rates_by_label(oracle::full_register_evolve(net, b));
  CHECK(max_rate_gap(rates.rates, brute) < 1e-12);
  for (Label l : {3u, 6u, 9u, 12u}) CHECK(std::abs(brute.at(l) - 0.25) < 1e-12);
}

TEST_CASE("oracle equivalence on every scenario", "[oracle][property]") {
  Rng rng(0x0a11);
  for (const auto& name : scenario_names()) {
    const auto net = build_scenario(name);
    INFO(name);
    for (int trial = 0; trial < 20; ++trial) {
      const Binding b = random_binding(net, rng);
      const auto rates = evaluate(net, b).rates;
      const auto brute = oracle::rates_by_label(oracle::full_register_evolve(net, b));
      REQUIRE(max_rate_gap(rates.rates, brute) < 1e-12);
    }
  }
}

TEST_CASE("golden: Franson scenario i", "[oracle][golden]") {
  const auto s2 = [](double x) { return sq(std::sin(x / 2)); };
  const auto c2 = [](double x) { return sq(std::cos(x / 2)); };
  check_golden("franson_i",
               {{pair(1, 2), [&](double a, double b) { return s2(a) * s2(b); }},
                {pair(3, 2), [&](double a, double b) { return c2(a) * s2(b); }},
                {pair(1, 4), [&](double a, double b) { return s2(a) * c2(b); }},
                {pair(3, 4), [&](double a, double b) { return c2(a) * c2(b); }}});
}

TEST_CASE("golden: Franson scenario ii", "[oracle][golden]") {
  std::map<Label, Golden> expected;
  for (int i : {1, 3, 5, 7}) {
    for (int j : {2, 4, 6, 8}) expected[pair(i, j)] = [](double, double) { return 1.0 / 16; };
  }
  check_golden("franson_ii", expected);
}

TEST_CASE("golden: Franson scenario iii", "[oracle][golden]") {
  const Golden same = [](double a, double b) { return 0.25 * sq(std::cos((a + b) / 2)); };
  const Golden cross = [](double a, double b) { return 0.25 * sq(std::sin((a + b) / 2)); };
  const Golden flat = [](double, double) { return 1.0 / 16; };
  check_golden("franson_iii", {{pair(1, 2), same},
                               {pair(3, 4), same},
                               {pair(2, 3), cross},
                               {pair(1, 4), cross},
                               {pair(1, 6), flat},
                               {pair(1, 8), flat},
                               {pair(2, 5), flat},
                               {pair(2, 7), flat},
                               {pair(3, 6), flat},
                               {pair(3, 8), flat},
                               {pair(4, 5), flat},
                               {pair(4, 7), flat}});
}
