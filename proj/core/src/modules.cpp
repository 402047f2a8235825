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

#include "qdn/modules.hpp"

#include <set>

#include "qdn/errors.hpp"

namespace qdn {

namespace {

Expr one() { return Expr::literal(1.0); }

void require_distinct(std::initializer_list<BasisElement> ports, const char* what) {
  std::set<BasisElement> seen;
  for (const auto& p : ports) {
    if (!seen.insert(p).second) {
      throw ModuleError(std::string(what) + ": port " + to_string(p) +
                        " used twice");
    }
  }
}

void require_suo_pair(const StageSpace& source, const char* what) {
  if (source.suo_dim() < 2) {
    throw ModuleError(std::string(what) + " needs SUO dimension >= 2 at stage " +
                      std::to_string(source.stage_index()));
  }
}

}  // namespace

std::vector<Rule> beamsplitter_rules(const Expr& t, const Expr& r,
                                     const BasisElement& in1,
                                     const BasisElement& in2,
                                     const BasisElement& out1,
                                     const BasisElement& out2) {
  require_distinct({in1, in2}, "beamsplitter inputs");
  require_distinct({out1, out2}, "beamsplitter outputs");
  const Expr ir = Expr::imaginary_unit() * r;
  return {
      {in1, {{out1, t}, {out2, ir}}},
      {in2, {{out1, ir}, {out2, t}}},
  };
}

std::vector<Rule> wollaston_rules(const StageSpace& source, Label in,
                                  Label out1, Label out2) {
  require_suo_pair(source, "Wollaston prism");
  if (out1 == out2) throw ModuleError("Wollaston prism outputs coincide");
  return {
      {{1, in}, {{{1, out1}, one()}}},
      {{2, in}, {{{2, out2}, one()}}},
  };
}

std::vector<Rule> rotator_rules(const StageSpace& source, Label in, Label out,
                                bool include_s1) {
  require_suo_pair(source, "polarization rotator");
  std::vector<Rule> rules;
  if (include_s1) rules.push_back({{1, in}, {{{2, out}, one()}}});
  rules.push_back({{2, in}, {{{1, out}, Expr::literal(-1.0)}}});
  return rules;
}

std::vector<Rule> mirror_rules(const BasisElement& in, const BasisElement& out) {
  return {{in, {{out, one()}}}};
}

std::vector<Rule> phase_rules(const Expr& phase, const BasisElement& in,
                              const BasisElement& out) {
  return {{in, {{out, cis(phase)}}}};
}

std::vector<Rule> pair_source_rules(const BasisElement& source,
                                    const BasisElement& target_pair) {
  if (signal_count(target_pair.label) != 2) {
    throw ModuleError("pair source target " + to_string(target_pair) +
                      " must have exactly two detectors signalling");
  }
  return {{source, {{target_pair, one()}}}};
}

std::vector<RuleTerm> expand_pair(int suo_index, const ArmFactor& first,
                                  const ArmFactor& second) {
  std::vector<RuleTerm> terms;
  for (const auto& [a, m] : first) {
    for (const auto& [b, n] : second) {
      if (m == n) {
        throw ModuleError("both photons routed to detector " + std::to_string(m));
      }
      terms.push_back({{suo_index, labstate_label({m, n})}, a * b});
    }
  }
  return terms;
}

std::vector<Rule> module_rules(const ModuleSpec& spec, const StageSpace& source,
                               const StageSpace& target) {
  const auto ports = [&](std::size_t nin, std::size_t nout, std::size_t npar,
                         const char* what) {
    if (spec.inputs.size() != nin || spec.outputs.size() != nout ||
        spec.parameters.size() != npar) {
      throw ModuleError(std::string(what) + " expects " + std::to_string(nin) +
                        " inputs, " + std::to_string(nout) + " outputs and " +
                        std::to_string(npar) + " parameters");
    }
  };
  switch (spec.kind) {
    case ModuleKind::kBeamsplitter:
      ports(2, 2, 2, "beamsplitter");
      break;
    case ModuleKind::kWollaston:
      ports(1, 2, 0, "Wollaston prism");
      break;
    case ModuleKind::kMirror:
    case ModuleKind::kRotator:
    case ModuleKind::kPairSource:
      ports(1, 1, 0, "module");
      break;
    case ModuleKind::kPhase:
      ports(1, 1, 1, "phase plate");
      break;
  }

  std::vector<Rule> rules;
  switch (spec.kind) {
    case ModuleKind::kBeamsplitter:
      rules = beamsplitter_rules(spec.parameters[0], spec.parameters[1],
                                 spec.inputs[0], spec.inputs[1],
                                 spec.outputs[0], spec.outputs[1]);
      break;
    case ModuleKind::kWollaston:
      rules = wollaston_rules(source, spec.inputs[0].label,
                              spec.outputs[0].label, spec.outputs[1].label);
      break;
    case ModuleKind::kMirror:
      rules = mirror_rules(spec.inputs[0], spec.outputs[0]);
      break;
    case ModuleKind::kPhase:
      rules = phase_rules(spec.parameters[0], spec.inputs[0], spec.outputs[0]);
      break;
    case ModuleKind::kRotator:
      rules = rotator_rules(source, spec.inputs[0].label, spec.outputs[0].label);
      break;
    case ModuleKind::kPairSource:
      rules = pair_source_rules(spec.inputs[0], spec.outputs[0]);
      break;
  }
  for (const auto& rule : rules) {
    if (!source.contains(rule.source)) {
      throw ModuleError("module input " + to_string(rule.source) +
                        " is not declared in stage " +
                        std::to_string(source.stage_index()));
    }
    for (const auto& term : rule.terms) {
      if (!target.contains(term.target)) {
        throw ModuleError("module output " + to_string(term.target) +
                          " is not declared in stage " +
                          std::to_string(target.stage_index()));
      }
    }
  }
  return rules;
}

}  // namespace qdn
