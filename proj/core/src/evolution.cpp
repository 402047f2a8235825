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

#include "qdn/evolution.hpp"

#include <algorithm>
#include <string>

#include "qdn/errors.hpp"

namespace qdn {

namespace {

std::string stage_name(const StageSpace& s) {
  return "stage " + std::to_string(s.stage_index());
}

}  // namespace

StageMap::StageMap(StagePtr source, StagePtr target, std::vector<Rule> rules)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw RuleError("stage map needs two stages");
  rules_.resize(source_->size());
  for (auto& rule : rules) {
    auto k = source_->index_of(rule.source);
    if (!k) {
      throw RuleError("rule source " + to_string(rule.source) +
                      " is not declared in " + stage_name(*source_));
    }
    if (rules_[*k]) {
      throw RuleError("duplicate rule for " + to_string(rule.source) +
                      " in map " + std::to_string(source_->stage_index()) +
                      " -> " + std::to_string(target_->stage_index()));
    }
    std::vector<RuleTerm> merged;
    for (auto& term : rule.terms) {
      if (!target_->contains(term.target)) {
        throw RuleError("rule target " + to_string(term.target) +
                        " is not declared in " + stage_name(*target_));
      }
      auto same = std::find_if(merged.begin(), merged.end(), [&](auto& t) {
        return t.target == term.target;
      });
      if (same == merged.end()) {
        merged.push_back(std::move(term));
      } else {
        same->amplitude = same->amplitude + term.amplitude;
      }
    }
    rules_[*k] = std::move(merged);
  }
}

std::size_t StageMap::rule_count() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rules_) n += r.has_value();
  return n;
}

std::set<std::string> StageMap::parameters() const {
  std::set<std::string> names;
  for (const auto& r : rules_) {
    if (!r) continue;
    for (const auto& t : *r) names.merge(parameters_of(t.amplitude));
  }
  return names;
}

bool operator==(const StageMap& a, const StageMap& b) {
  if (!(*a.source_ == *b.source_) || !(*a.target_ == *b.target_)) return false;
  if (a.rules_.size() != b.rules_.size()) return false;
  for (std::size_t k = 0; k < a.rules_.size(); ++k) {
    const auto& x = a.rules_[k];
    const auto& y = b.rules_[k];
    if (x.has_value() != y.has_value()) return false;
    if (!x) continue;
    if (x->size() != y->size()) return false;
    for (std::size_t t = 0; t < x->size(); ++t) {
      if ((*x)[t].target != (*y)[t].target ||
          !((*x)[t].amplitude == (*y)[t].amplitude)) {
        return false;
      }
    }
  }
  return true;
}

TransitionMatrix realize(const StageMap& map, const Binding& binding) {
  const auto& src = *map.source();
  const auto& dst = *map.target();
  TransitionMatrix m{map.source(), map.target(),
                     Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dst.size()),
                                            static_cast<Eigen::Index>(src.size()))};
  for (std::size_t col = 0; col < src.size(); ++col) {
    const auto& rule = map.rule_at(col);
    if (!rule) {
      throw IncompleteMap("no rule for " + to_string(src.basis()[col]) +
                          " in map " + std::to_string(src.stage_index()) +
                          " -> " + std::to_string(dst.stage_index()));
    }
    for (const auto& term : *rule) {
      const auto row = *dst.index_of(term.target);
      m.entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
          eval(term.amplitude, binding);
    }
  }
  return m;
}

double semi_unitarity_defect(const TransitionMatrix& matrix) {
  const auto n = matrix.entries.cols();
  if (n == 0) return 0.0;
  Eigen::MatrixXcd gram = matrix.entries.adjoint() * matrix.entries;
  gram -= Eigen::MatrixXcd::Identity(n, n);
  return gram.cwiseAbs().maxCoeff();
}

TransitionMatrix compose(std::span<const StageMap> maps,
                         const Binding& binding) {
  if (maps.empty()) throw CompositionError("nothing to compose");
  TransitionMatrix total = realize(maps.front(), binding);
  for (std::size_t k = 1; k < maps.size(); ++k) {
    const auto& prev = *maps[k - 1].target();
    const auto& next = *maps[k].source();
    if (!(prev == next)) {
      throw CompositionError(
          "stage mismatch between map " + std::to_string(k - 1) + " (ends at " +
          stage_name(prev) + ") and map " + std::to_string(k) +
          " (starts at " + stage_name(next) + ")");
    }
    TransitionMatrix step = realize(maps[k], binding);
    total.entries = step.entries * total.entries;
    total.target = step.target;
  }
  return total;
}

EffectiveVector apply(const TransitionMatrix& matrix,
                      const EffectiveVector& state) {
  if (!state.stage || !(*state.stage == *matrix.source)) {
    throw DimensionError("state basis does not match the map source basis");
  }
  return EffectiveVector(matrix.target, matrix.entries * state.coefficients);
}

}  // namespace qdn
