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

#include "qdn/scenarios.hpp"

#include <algorithm>
#include <set>

#include "qdn/errors.hpp"
#include "qdn/modules.hpp"

namespace qdn {

namespace {

Expr p(const char* name) { return Expr::parameter(name); }
Expr i_unit() { return Expr::imaginary_unit(); }

Expr complex_param(const char* re, const char* im) {
  return p(re) + i_unit() * p(im);
}

Expr t_of(const char* theta) { return cos(p(theta)); }
Expr r_of(const char* theta) { return sin(p(theta)); }

// Rules of a module whose unused in-ports are not part of the source basis.
std::vector<Rule> declared_only(std::vector<Rule> rules, const StageSpace& source) {
  std::erase_if(rules, [&](const Rule& r) { return !source.contains(r.source); });
  return rules;
}

void append(std::vector<Rule>& to, std::vector<Rule> from) {
  for (auto& r : from) to.push_back(std::move(r));
}

NetworkDescription finish(NetworkDescription net) {
  auto diagnostics = validate(net);
  if (has_errors(diagnostics)) {
    std::string msg = "scenario '" + net.name + "' is malformed:";
    for (const auto& d : diagnostics) msg += "\n  " + to_string(d);
    throw Error(msg);
  }
  return net;
}

std::vector<InitTerm> alpha_beta_init(BasisElement first, BasisElement second) {
  return {{first, complex_param("alpha_re", "alpha_im")},
          {second, complex_param("beta_re", "beta_im")}};
}

const std::vector<std::string> kAlphaBeta = {"alpha_re", "alpha_im", "beta_re",
                                             "beta_im"};

NetworkDescription wollaston() {
  NetworkDescription net;
  net.name = "wollaston";
  net.parameters = kAlphaBeta;
  auto s0 = make_stage(0, 2, 1, {{1, 1}, {2, 1}});
  auto s1 = make_stage(1, 2, 2, {{1, 1}, {2, 2}});
  net.stages = {s0, s1};
  net.initial_state = alpha_beta_init({1, 1}, {2, 1});
  net.maps.emplace_back(s0, s1, wollaston_rules(*s0, 1, 1, 2));
  return finish(std::move(net));
}

NetworkDescription beamsplitter() {
  NetworkDescription net;
  net.name = "beamsplitter";
  net.parameters = kAlphaBeta;
  net.parameters.push_back("theta");
  auto s0 = make_stage(0, 1, 2, {{1, 1}, {1, 2}});
  auto s1 = make_stage(1, 1, 2, {{1, 1}, {1, 2}});
  net.stages = {s0, s1};
  net.initial_state = alpha_beta_init({1, 1}, {1, 2});
  // The transmitted beam of in-port 1 reaches detector 2.
  net.maps.emplace_back(
      s0, s1,
      beamsplitter_rules(t_of("theta"), r_of("theta"), {1, 1}, {1, 2}, {1, 2}, {1, 1}));
  return finish(std::move(net));
}

NetworkDescription brandt() {
  NetworkDescription net;
  net.name = "brandt";
  net.parameters = kAlphaBeta;
  net.parameters.insert(net.parameters.end(), {"theta1", "theta2"});
  auto s0 = make_stage(0, 2, 1, {{1, 1}, {2, 1}});
  auto s1 = make_stage(1, 2, 2, {{1, 1}, {2, 2}});
  auto s2 = make_stage(2, 2, 3, {{1, 1}, {1, 2}, {1, 4}});
  auto s3 = make_stage(3, 2, 3, {{1, 1}, {1, 2}, {1, 4}});
  net.stages = {s0, s1, s2, s3};
  net.initial_state = alpha_beta_init({1, 1}, {2, 1});

  net.maps.emplace_back(s0, s1, wollaston_rules(*s0, 1, 1, 2));

  // BS1 sees light on one in-port only; R turns s2 on path 2 into -s1 at A^3.
  std::vector<Rule> r21 = declared_only(
      beamsplitter_rules(t_of("theta1"), r_of("theta1"), {1, 1}, {2, 1}, {1, 1}, {1, 2}),
      *s1);
  append(r21, rotator_rules(*s1, labstate_label({2}), labstate_label({3})));
  net.maps.emplace_back(s1, s2, std::move(r21));

  // A^1 is held until the last stage; BS2 mixes paths 2 and 3.
  std::vector<Rule> r32 = mirror_rules({1, 1}, {1, 1});
  append(r32, beamsplitter_rules(t_of("theta2"), r_of("theta2"), {1, 2}, {1, 4},
                                 {1, 4}, {1, 2}));
  net.maps.emplace_back(s2, s3, std::move(r32));
  return finish(std::move(net));
}

enum class FransonCase { kI, kII, kIII };

NetworkDescription franson(FransonCase which) {
  NetworkDescription net;
  net.name = which == FransonCase::kI    ? "franson_i"
             : which == FransonCase::kII ? "franson_ii"
                                         : "franson_iii";
  net.parameters = {"theta1", "theta2", "theta3", "theta4", "phi1", "phi2"};

  const Expr t1 = t_of("theta1"), r1 = r_of("theta1");
  const Expr t2 = t_of("theta2"), r2 = r_of("theta2");
  const Expr t3 = t_of("theta3"), r3 = r_of("theta3");
  const Expr t4 = t_of("theta4"), r4 = r_of("theta4");
  const Expr i = i_unit();

  auto s0 = make_stage(0, 1, 1, {{1, labstate_label({1})}});
  auto s1 = make_stage(1, 1, 2, {{1, labstate_label({1, 2})}});
  // photon 1 on the short (1) or long (3) arm, photon 2 on short (2) or long (4)
  const Label ss = labstate_label({1, 2}), ls = labstate_label({2, 3}),
              sl = labstate_label({1, 4}), ll = labstate_label({3, 4});
  auto s2 = make_stage(2, 1, 4, {{1, ss}, {1, ls}, {1, sl}, {1, ll}});

  // Phase factors ride on the long-arm reflection at the first splitters.
  std::vector<Rule> r21 = {
      {{1, ss},
       expand_pair(1, {{t1, 1}, {i * r1 * cis(p("phi1")), 3}},
                   {{t2, 2}, {i * r2 * cis(p("phi2")), 4}})}};

  // Second splitters. An arrival on the short path leaves through detectors
  // (1,3) / (2,4); in scenarios ii and iii a long-path arrival is a separate
  // event seen by detectors (5,7) / (6,8), except that iii cannot tell the
  // L-L pair from the S-S pair.
  const auto arm1 = [&](bool long_path, bool distinguishable) -> ArmFactor {
    if (!long_path) return {{t3, 1}, {i * r3, 3}};
    if (distinguishable) return {{t3, 5}, {i * r3, 7}};
    return {{t3, 3}, {i * r3, 1}};
  };
  const auto arm2 = [&](bool long_path, bool distinguishable) -> ArmFactor {
    if (!long_path) return {{t4, 2}, {i * r4, 4}};
    if (distinguishable) return {{t4, 6}, {i * r4, 8}};
    return {{t4, 4}, {i * r4, 2}};
  };
  const bool timed = which != FransonCase::kI;
  const bool ll_timed = which == FransonCase::kII;

  std::vector<Rule> r32 = {
      {{1, ss}, expand_pair(1, arm1(false, timed), arm2(false, timed))},
      {{1, ls}, expand_pair(1, arm1(true, timed), arm2(false, timed))},
      {{1, sl}, expand_pair(1, arm1(false, timed), arm2(true, timed))},
      {{1, ll}, expand_pair(1, arm1(true, ll_timed), arm2(true, ll_timed))},
  };

  std::set<Label> final_labels;
  for (const auto& rule : r32) {
    for (const auto& term : rule.terms) final_labels.insert(term.target.label);
  }
  std::vector<BasisElement> final_basis;
  for (Label l : final_labels) final_basis.push_back({1, l});
  auto s3 = make_stage(3, 1, timed ? 8 : 4, std::move(final_basis));

  net.stages = {s0, s1, s2, s3};
  net.initial_state = {{{1, labstate_label({1})}, Expr::literal(1.0)}};
  net.maps.emplace_back(s0, s1, pair_source_rules({1, labstate_label({1})}, {1, ss}));
  net.maps.emplace_back(s1, s2, std::move(r21));
  net.maps.emplace_back(s2, s3, std::move(r32));
  return finish(std::move(net));
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "wollaston", "beamsplitter", "brandt", "franson_i", "franson_ii", "franson_iii"};
  return names;
}

NetworkDescription build_scenario(std::string_view name) {
  if (name == "wollaston") return wollaston();
  if (name == "beamsplitter") return beamsplitter();
  if (name == "brandt") return brandt();
  if (name == "franson_i") return franson(FransonCase::kI);
  if (name == "franson_ii") return franson(FransonCase::kII);
  if (name == "franson_iii") return franson(FransonCase::kIII);
  throw UnknownScenario("unknown scenario '" + std::string(name) + "'");
}

}  // namespace qdn
