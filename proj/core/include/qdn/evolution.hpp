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
#include <set>
#include <string>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdn/expr.hpp"
#include "qdn/registry.hpp"

namespace qdn {

struct RuleTerm {
  BasisElement target;
  Expr amplitude;

  friend bool operator==(const RuleTerm&, const RuleTerm&) = default;
};

// U s^i a^A = sum over terms of amplitude * s^j a^B
struct Rule {
  BasisElement source;
  std::vector<RuleTerm> terms;
};

/// Semi-unitary rule set from one stage to the next. Each source element
/// carries at most one rule; repeated targets inside a rule are merged into
/// a single summed amplitude when the map is built.
class StageMap {
 public:
  // Throws RuleError when a source or target element is not declared in its
  // stage, or when a source element has two rules.
  StageMap(StagePtr source, StagePtr target, std::vector<Rule> rules);

  const StagePtr& source() const noexcept { return source_; }
  const StagePtr& target() const noexcept { return target_; }

  // Rule for the source basis element at position k, if any.
  const std::optional<std::vector<RuleTerm>>& rule_at(std::size_t k) const {
    return rules_.at(k);
  }
  std::size_t rule_count() const noexcept;

  // dim(target) >= dim(source); a semi-unitary map cannot exist otherwise.
  bool dimension_admissible() const noexcept {
    return target_->size() >= source_->size();
  }

  std::set<std::string> parameters() const;

  friend bool operator==(const StageMap& a, const StageMap& b);

 private:
  StagePtr source_;
  StagePtr target_;
  // aligned with source_->basis()
  std::vector<std::optional<std::vector<RuleTerm>>> rules_;
};

/// Dense realization of a map (or a composition of maps) under a binding:
/// rows index target basis elements, columns source basis elements.
struct TransitionMatrix {
  StagePtr source;
  StagePtr target;
  Eigen::MatrixXcd entries;
};

TransitionMatrix realize(const StageMap& map, const Binding& binding);

// Max entry magnitude of U^dagger U - I over the source basis.
double semi_unitarity_defect(const TransitionMatrix& matrix);

TransitionMatrix compose(std::span<const StageMap> maps,
                         const Binding& binding);

EffectiveVector apply(const TransitionMatrix& matrix,
                      const EffectiveVector& state);

}  // namespace qdn
