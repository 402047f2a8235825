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

#include "qdn/network.hpp"

#include <set>
#include <sstream>

#include "qdn/errors.hpp"

namespace qdn {

std::string to_string(const Diagnostic& d) {
  std::ostringstream out;
  if (d.where.line > 0) out << d.where.line << ':' << d.where.column << ": ";
  out << (d.severity == Severity::kError ? "error: " : "warning: ")
      << d.message;
  return out.str();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::kError) return true;
  }
  return false;
}

bool operator==(const NetworkDescription& a, const NetworkDescription& b) {
  if (a.name != b.name || a.parameters != b.parameters) return false;
  if (a.stages.size() != b.stages.size()) return false;
  for (std::size_t k = 0; k < a.stages.size(); ++k) {
    if (!(*a.stages[k] == *b.stages[k])) return false;
  }
  if (a.initial_state.size() != b.initial_state.size()) return false;
  for (std::size_t k = 0; k < a.initial_state.size(); ++k) {
    if (a.initial_state[k].element != b.initial_state[k].element ||
        !(a.initial_state[k].amplitude == b.initial_state[k].amplitude)) {
      return false;
    }
  }
  return a.maps == b.maps;
}

namespace {

Location at(const std::vector<Location>& v, std::size_t k) {
  return k < v.size() ? v[k] : Location{};
}

}  // namespace

std::vector<Diagnostic> validate(const NetworkDescription& network) {
  std::vector<Diagnostic> out;
  const auto error = [&](Location where, std::string msg) {
    out.push_back({Severity::kError, where, std::move(msg)});
  };

  if (network.stages.empty()) {
    error({1, 1}, "network declares no stages");
    return out;
  }
  for (std::size_t k = 0; k < network.stages.size(); ++k) {
    if (network.stages[k]->stage_index() != static_cast<int>(k)) {
      error(at(network.source.stages, k),
            "stage " + std::to_string(network.stages[k]->stage_index()) +
                " declared where stage " + std::to_string(k) + " was expected");
    }
  }
  if (network.maps.size() + 1 != network.stages.size()) {
    error(network.source.maps.empty() ? at(network.source.stages, 0)
                                      : network.source.maps.back(),
          "network with " + std::to_string(network.stages.size()) +
              " stages needs " + std::to_string(network.stages.size() - 1) +
              " maps, found " + std::to_string(network.maps.size()));
  }

  for (std::size_t k = 0; k < network.maps.size(); ++k) {
    const auto& map = network.maps[k];
    const Location where = at(network.source.maps, k);
    const std::string name = "map " +
                             std::to_string(map.source()->stage_index()) +
                             " -> " +
                             std::to_string(map.target()->stage_index());
    if (map.source()->stage_index() != static_cast<int>(k) ||
        map.target()->stage_index() != static_cast<int>(k + 1)) {
      error(where, name + " is out of sequence; expected map " +
                       std::to_string(k) + " -> " + std::to_string(k + 1));
    }
    if (!map.dimension_admissible()) {
      error(where, name + ": source effective dimension " +
                       std::to_string(map.source()->size()) +
                       " exceeds target effective dimension " +
                       std::to_string(map.target()->size()) +
                       "; no semi-unitary map exists (dimension theorem)");
    }
    for (std::size_t e = 0; e < map.source()->size(); ++e) {
      if (!map.rule_at(e)) {
        error(where, name + ": no rule for source element " +
                         to_string(map.source()->basis()[e]));
      }
    }
  }

  for (const auto& term : network.initial_state) {
    if (!network.initial_stage()->contains(term.element)) {
      error(network.source.init, "initial term on undeclared element " +
                                     to_string(term.element));
    }
  }

  std::set<std::string> used;
  for (const auto& term : network.initial_state) {
    used.merge(parameters_of(term.amplitude));
  }
  for (const auto& map : network.maps) used.merge(map.parameters());
  const std::set<std::string> declared(network.parameters.begin(),
                                       network.parameters.end());
  for (std::size_t k = 0; k < network.parameters.size(); ++k) {
    if (!used.contains(network.parameters[k])) {
      out.push_back({Severity::kWarning, at(network.source.parameters, k),
                     "parameter '" + network.parameters[k] +
                         "' is never used"});
    }
  }
  for (const auto& name : used) {
    if (!declared.contains(name)) {
      error({}, "parameter '" + name + "' is used but not declared");
    }
  }
  if (network.initial_state.empty()) {
    out.push_back({Severity::kWarning, network.source.init,
                   "network has no initial state; rates cannot be computed"});
  }
  return out;
}

EffectiveVector initial_vector(const NetworkDescription& network,
                               const Binding& binding) {
  EffectiveVector psi(network.initial_stage());
  for (const auto& term : network.initial_state) {
    auto k = psi.stage->index_of(term.element);
    if (!k) {
      throw DimensionError("initial term on undeclared element " +
                           to_string(term.element));
    }
    psi.coefficients[static_cast<Eigen::Index>(*k)] +=
        eval(term.amplitude, binding);
  }
  return psi;
}

TransitionMatrix total_transition(const NetworkDescription& network,
                                  const Binding& binding) {
  if (network.maps.empty()) {
    const auto n = static_cast<Eigen::Index>(network.initial_stage()->size());
    return {network.initial_stage(), network.initial_stage(),
            Eigen::MatrixXcd::Identity(n, n)};
  }
  return compose(network.maps, binding);
}

std::vector<std::string> unbound_parameters(const NetworkDescription& network,
                                            const Binding& binding) {
  std::vector<std::string> missing;
  for (const auto& p : network.parameters) {
    if (!binding.contains(p)) missing.push_back(p);
  }
  return missing;
}

Evaluation evaluate(const NetworkDescription& network, const Binding& binding,
                    const RateOptions& options) {
  Evaluation ev;
  ev.total = total_transition(network, binding);
  ev.kraus = kraus_operators(ev.total);
  ev.povms = povm_elements(ev.kraus);
  ev.rates = outcome_rates(ev.povms, initial_vector(network, binding), options);
  ev.rates.binding = binding;
  ev.rates.network = network.name;
  ev.rates.stage_count = static_cast<int>(network.stages.size());
  return ev;
}

}  // namespace qdn
