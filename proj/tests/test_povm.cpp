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

#include <Eigen/Eigenvalues>

#include "qdn/errors.hpp"
#include "qdn/povm.hpp"
#include "qdn/scenarios.hpp"
#include "support.hpp"

using namespace qdn;
using namespace qdn::testing;

namespace {

Evaluation run(const char* scenario, const Binding& b, RateOptions opt = {}) {
  return evaluate(build_scenario(scenario), b, opt);
}

Binding with_alpha_beta(Binding b, cd alpha, cd beta) {
  bind_alpha_beta(b, alpha, beta);
  return b;
}

const PovmElement& element(const std::vector<PovmElement>& povms, Label label) {
  for (const auto& e : povms) {
    if (e.label == label) return e;
  }
  throw std::out_of_range("no POVM element for label " + std::to_string(label));
}

const double kH = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("Kraus operators of the Wollaston prism", "[povm]") {
  const auto ev = run("wollaston", with_alpha_beta({}, 1.0, 0.0));
  REQUIRE(ev.kraus.size() == 2);
  CHECK(ev.kraus[0].label == 1u);
  CHECK(ev.kraus[1].label == 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& m = ev.kraus[k].matrix;
    REQUIRE(m.rows() == 1);
    REQUIRE(m.cols() == 2);
    CHECK(m(0, k) == cd(1.0));
    CHECK(m(0, 1 - k) == cd(0.0));
  }
}

TEST_CASE("Kraus operators of Franson scenario i", "[povm]") {
  const auto ev = run("franson_i", franson_binding(0.4, 1.1));
  std::vector<Label> labels;
  for (const auto& k : ev.kraus) labels.push_back(k.label);
  CHECK(labels == std::vector<Label>{3, 6, 9, 12});
}

TEST_CASE("a zero transition matrix has no Kraus operators", "[povm]") {
  TransitionMatrix zero;
  zero.source = make_stage(0, 1, 1, {{1, 0}, {1, 1}});
  zero.target = make_stage(1, 1, 2, {{1, 1}, {1, 2}, {1, 3}});
  zero.entries = Eigen::MatrixXcd::Zero(3, 2);
  CHECK(kraus_operators(zero).empty());
  CHECK(povm_elements({}).empty());
}

TEST_CASE("POVM elements", "[povm]") {
  const auto w = run("wollaston", with_alpha_beta({}, 1.0, 0.0));
  REQUIRE(w.povms.size() == 2);
  Eigen::MatrixXcd d1 = Eigen::MatrixXcd::Zero(2, 2), d2 = d1;
  d1(0, 0) = 1.0;
  d2(1, 1) = 1.0;
  CHECK(w.povms[0].matrix.isApprox(d1, 0.0));
  CHECK(w.povms[1].matrix.isApprox(d2, 0.0));
  CHECK(completeness_defect(w.povms) < 1e-12);
  const std::vector<PovmElement> lone = {w.povms[0]};
  CHECK(std::abs(completeness_defect(lone) - 1.0) < 1e-15);
  CHECK_THROWS_AS(completeness_defect({}), std::invalid_argument);

  // Beamsplitter label 1: [[r^2, -irt], [irt, t^2]]
  for (double theta : {0.3, kPi / 4, 1.2, -2.0}) {
    Binding b = with_alpha_beta({{"theta", theta}}, 1.0, 0.0);
    const double t = std::cos(theta), r = std::sin(theta);
    const auto ev = run("beamsplitter", b);
    const auto& e1 = element(ev.povms, 1).matrix;
    CHECK(std::abs(e1(0, 0) - r * r) < 1e-15);
    CHECK(std::abs(e1(0, 1) - cd(0, -r * t)) < 1e-15);
    CHECK(std::abs(e1(1, 0) - cd(0, r * t)) < 1e-15);
    CHECK(std::abs(e1(1, 1) - t * t) < 1e-15);
  }
}

TEST_CASE("outcome rates", "[povm]") {
  const cd alpha(0.6, 0.0), beta(0.0, 0.8);
  const auto w = run("wollaston", with_alpha_beta({}, alpha, beta));
  CHECK(std::abs(w.rates.rates.at(1) - 0.36) < 1e-15);
  CHECK(std::abs(w.rates.rates.at(2) - 0.64) < 1e-15);
  CHECK(w.rates.network == "wollaston");
  CHECK(w.rates.stage_count == 2);

  // r^2|a|^2 + irt(a b* - a* b) + t^2|b|^2 at a = 1/sqrt2, b = i/sqrt2,
  // t = r = 1/sqrt2: 1/4 + (i/2)(-i/2 - i/2) + 1/4 = 1
  const auto bs = run("beamsplitter",
                      with_alpha_beta({{"theta", kPi / 4}}, kH, cd(0, kH)));
  CHECK(std::abs(bs.rates.rates.at(1) - 1.0) < 1e-12);
  CHECK(std::abs(coincidence_rate(bs.rates, {2})) < 1e-12);

  const auto f3 = run("franson_iii", franson_binding(0, 0));
  CHECK(std::abs(coincidence_rate(f3.rates, {1, 2}) - 0.25) < 1e-12);
}

TEST_CASE("normalization is enforced", "[povm]") {
  const Binding b = with_alpha_beta({}, 1.0, 1.0);
  try {
    (void)run("wollaston", b);
    FAIL("expected NormalizationError");
  } catch (const NormalizationError& e) {
    CHECK(std::abs(e.norm() - std::sqrt(2.0)) < 1e-12);
  }
  RateOptions opt;
  opt.normalize = true;
  const auto ev = run("wollaston", b, opt);
  CHECK(std::abs(ev.rates.rates.at(1) - 0.5) < 1e-15);
  CHECK(std::abs(ev.rates.rates.at(2) - 0.5) < 1e-15);
}

TEST_CASE("coincidence rates and marginals", "[povm]") {
  const double phi1 = 0.7, phi2 = -1.9;
  const auto f1 = run("franson_i", franson_binding(phi1, phi2));
  CHECK(std::abs(coincidence_rate(f1.rates, {1, 2}) -
                 sq(std::sin(phi1 / 2)) * sq(std::sin(phi2 / 2))) < 1e-12);
  CHECK(coincidence_rate(f1.rates, {}) == 0.0);

  const auto f2 = run("franson_ii", franson_binding(phi1, phi2));
  CHECK(std::abs(coincidence_rate(f2.rates, {1, 6}) - 1.0 / 16) < 1e-12);

  const cd alpha(0.28, -0.96), beta(0.0);
  const auto w = run("wollaston", with_alpha_beta({}, alpha, beta));
  CHECK(std::abs(detector_marginal(w.rates, 1) - std::norm(alpha)) < 1e-15);

  // labels containing detector 1: {1,2} = 1/4, {1,6} = {1,8} = 1/16
  const auto f3 = run("franson_iii", franson_binding(0, 0));
  CHECK(std::abs(detector_marginal(f3.rates, 1) - 0.375) < 1e-12);
  CHECK(detector_marginal(RateTable{}, 1) == 0.0);
  CHECK(total_probability(RateTable{}) == 0.0);
}

TEST_CASE("structural POVM properties on every scenario", "[povm][property]") {
  Rng rng(0x9017);
  for (const auto& name : scenario_names()) {
    const auto net = build_scenario(name);
    INFO(name);
    for (int trial = 0; trial < 50; ++trial) {
      const Binding b = random_binding(net, rng);
      const auto ev = evaluate(net, b);
      REQUIRE(completeness_defect(ev.povms) < 1e-10);
      REQUIRE(std::abs(total_probability(ev.rates) - 1.0) < 1e-9);
      for (const auto& [label, p] : ev.rates.rates) {
        REQUIRE(p >= -1e-12);
        REQUIRE(p <= 1.0 + 1e-12);
      }
      for (const auto& e : ev.povms) {
        REQUIRE((e.matrix - e.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e.matrix);
        REQUIRE(es.eigenvalues().minCoeff() >= -1e-10);
      }
      // the second route: |final amplitudes|^2 per label
      const auto psi = apply(ev.total, initial_vector(net, b));
      const auto direct = final_state_rates(psi);
      for (const auto& [label, p] : ev.rates.rates) {
        const double q = direct.count(label) ? direct.at(label) : 0.0;
        REQUIRE(std::abs(p - q) < 1e-12);
      }
      for (const auto& [label, q] : direct) {
        REQUIRE(std::abs(q - coincidence_rate(ev.rates, label_detectors(label))) < 1e-12);
      }
    }
  }
}

TEST_CASE("POVM positivity over random states", "[povm][property]") {
  Rng rng(0x9018);
  for (const auto& name : scenario_names()) {
    const auto net = build_scenario(name);
    const auto ev = evaluate(net, random_binding(net, rng));
    const auto n = net.initial_stage()->size();
    for (int trial = 0; trial < 1000; ++trial) {
      Eigen::VectorXcd psi(n);
      for (std::size_t k = 0; k < n; ++k) psi[k] = {rng.gauss(), rng.gauss()};
      psi.normalize();
      for (const auto& e : ev.povms) {
        const cd q = psi.dot(e.matrix * psi);  // conjugates psi
        REQUIRE(q.real() >= -1e-10);
      }
    }
  }
}

TEST_CASE("Wollaston elements are orthogonal projectors", "[povm]") {
  Rng rng(0x9019);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ab = random_alpha_beta(rng);
    const auto ev = run("wollaston", with_alpha_beta({}, ab.alpha, ab.beta));
    for (const auto& ei : ev.povms) {
      for (const auto& ej : ev.povms) {
        const Eigen::MatrixXcd expected =
            ei.label == ej.label ? ei.matrix : Eigen::MatrixXcd::Zero(2, 2);
        REQUIRE((ei.matrix * ej.matrix - expected).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}
