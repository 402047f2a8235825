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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qdn/evolution.hpp"
#include "qdn/expr.hpp"
#include "qdn/registry.hpp"

namespace qdn {

// Rule generators for the optical modules. Each returns rules for a single
// stage map; callers concatenate the outputs of several modules acting in
// parallel on one stage.

// in1 -> t out1 + i r out2,  in2 -> i r out1 + t out2. The factor i is the
// relative phase picked up on reflection.
std::vector<Rule> beamsplitter_rules(const Expr& t, const Expr& r,
                                     const BasisElement& in1,
                                     const BasisElement& in2,
                                     const BasisElement& out1,
                                     const BasisElement& out2);

// Polarizing splitter on the beam arriving at label `in`: s1 goes to `out1`,
// s2 to `out2`. The source stage must carry at least two SUO states.
std::vector<Rule> wollaston_rules(const StageSpace& source, Label in,
                                  Label out1, Label out2);

// Quarter-turn polarization rotator: s2@in -> -s1@out, and optionally
// s1@in -> s2@out.
std::vector<Rule> rotator_rules(const StageSpace& source, Label in, Label out,
                                bool include_s1 = false);

std::vector<Rule> mirror_rules(const BasisElement& in, const BasisElement& out);

std::vector<Rule> phase_rules(const Expr& phase, const BasisElement& in,
                              const BasisElement& out);

// Creation of a photon pair: unit amplitude from `source` onto a labstate
// in which exactly two detectors signal.
std::vector<Rule> pair_source_rules(const BasisElement& source,
                                    const BasisElement& target_pair);

// One photon's branch on a two-photon stage: (amplitude, detector).
using ArmFactor = std::vector<std::pair<Expr, int>>;

// Expands {sum a_k A^{m_k}}{sum b_l A^{n_l}} into single-label terms
// a_k b_l s@{m_k, n_l}.
std::vector<RuleTerm> expand_pair(int suo_index, const ArmFactor& first,
                                  const ArmFactor& second);

enum class ModuleKind { kBeamsplitter, kWollaston, kMirror, kPhase, kRotator, kPairSource };

/// Declarative description of one module placed between two stages.
struct ModuleSpec {
  ModuleKind kind;
  std::vector<BasisElement> inputs;
  std::vector<BasisElement> outputs;
  std::vector<Expr> parameters;  // beamsplitter: t, r; phase: phi
};

// Dispatches to the generator for spec.kind after checking the ports belong
// to their stages.
std::vector<Rule> module_rules(const ModuleSpec& spec, const StageSpace& source,
                               const StageSpace& target);

}  // namespace qdn
