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

#include <optional>
#include <string>
#include <vector>

#include "qdn/evolution.hpp"
#include "qdn/expr.hpp"
#include "qdn/povm.hpp"
#include "qdn/registry.hpp"

namespace qdn {

// 1-based source position; line 0 means "not from a file".
struct Location {
  int line = 0;
  int column = 0;
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  Location where;
  std::string message;
};

std::string to_string(const Diagnostic& d);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

struct InitTerm {
  BasisElement element;
  Expr amplitude;
};

/// Where each declaration came from, so later checks can point back at the
/// text. Empty for networks assembled in code.
struct SourceMap {
  std::vector<Location> parameters;  // aligned with NetworkDescription::parameters
  std::vector<Location> stages;
  std::vector<Location> maps;
  Location init;
};

struct NetworkDescription {
  std::string name;
  std::vector<std::string> parameters;  // declaration order
  std::vector<StagePtr> stages;         // stage k at index k
  std::vector<InitTerm> initial_state;
  std::vector<StageMap> maps;           // maps[k]: stage k -> k+1
  SourceMap source;

  const StagePtr& initial_stage() const { return stages.front(); }
  const StagePtr& final_stage() const { return stages.back(); }

  // Structural equality; source positions are ignored.
  friend bool operator==(const NetworkDescription& a,
                         const NetworkDescription& b);
};

// Structural checks: stage chaining, the dimension theorem (no semi-unitary
// map from a larger effective space into a smaller one), rule coverage,
// parameter use.
std::vector<Diagnostic> validate(const NetworkDescription& network);

EffectiveVector initial_vector(const NetworkDescription& network,
                               const Binding& binding);

// U_{N,0}; the identity on the initial basis when there are no maps.
TransitionMatrix total_transition(const NetworkDescription& network,
                                  const Binding& binding);

// Every parameter the network declares that `binding` lacks.
std::vector<std::string> unbound_parameters(const NetworkDescription& network,
                                            const Binding& binding);

struct Evaluation {
  TransitionMatrix total;
  std::vector<KrausOperator> kraus;
  std::vector<PovmElement> povms;
  RateTable rates;
};

// Full pipeline: compose, extract Kraus/POVM, apply to the initial state.
Evaluation evaluate(const NetworkDescription& network, const Binding& binding,
                    const RateOptions& options = {});

}  // namespace qdn
