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

#include <benchmark/benchmark.h>

#include <numbers>

#include "qdn/netdsl.hpp"
#include "qdn/scenarios.hpp"

namespace {

qdn::Binding franson_binding(double phi1, double phi2) {
  qdn::Binding b;
  for (int k = 1; k <= 4; ++k) b["theta" + std::to_string(k)] = std::numbers::pi / 4;
  b["phi1"] = phi1;
  b["phi2"] = phi2;
  return b;
}

void BM_ParseFransonIII(benchmark::State& state) {
  const std::string text = qdn::format_network(qdn::build_scenario("franson_iii"));
  for (auto _ : state) {
    auto r = qdn::parse_network(text);
    benchmark::DoNotOptimize(r);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseFransonIII);

void BM_ComposeFranson(benchmark::State& state) {
  const auto net = qdn::build_scenario("franson_iii");
  const auto b = franson_binding(0.3, 1.2);
  for (auto _ : state) {
    auto u = qdn::compose(net.maps, b);
    benchmark::DoNotOptimize(u.entries.data());
  }
}
BENCHMARK(BM_ComposeFranson);

void BM_EvaluateBrandt(benchmark::State& state) {
  const auto net = qdn::build_scenario("brandt");
  const qdn::Binding b = {{"alpha_re", 0.6}, {"alpha_im", 0.0}, {"beta_re", 0.0},
                          {"beta_im", 0.8}, {"theta1", 0.4},   {"theta2", 1.1}};
  for (auto _ : state) {
    auto ev = qdn::evaluate(net, b);
    benchmark::DoNotOptimize(ev.rates.rates);
  }
}
BENCHMARK(BM_EvaluateBrandt);

// One sweep row per iteration: the cost of a grid point in `qdn sweep`.
void BM_SweepFransonIII(benchmark::State& state) {
  const auto net = qdn::build_scenario("franson_iii");
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (int i = 0; i < n; ++i) {
      auto ev = qdn::evaluate(net, franson_binding(2 * std::numbers::pi * i / n, 0.0));
      benchmark::DoNotOptimize(ev.rates.rates);
    }
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SweepFransonIII)->Arg(64)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
