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

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdn/evolution.hpp"
#include "qdn/registry.hpp"

namespace qdn {

/// Block of the total evolution landing on final labstate `label`: rows are
/// the final SUO indices paired with that label (in final basis order),
/// columns the initial effective basis.
struct KrausOperator {
  Label label = 0;
  StagePtr initial;
  std::vector<int> suo_rows;
  Eigen::MatrixXcd matrix;
};

// E = M^dagger M over the initial effective basis.
struct PovmElement {
  Label label = 0;
  StagePtr initial;
  Eigen::MatrixXcd matrix;
};

struct RateTable {
  std::map<Label, double> rates;
  Binding binding;
  std::string network;
  int stage_count = 0;
};

// One operator per final label with an entry of magnitude > zero_tolerance,
// ordered by label.
std::vector<KrausOperator> kraus_operators(const TransitionMatrix& total,
                                           double zero_tolerance = 0.0);

std::vector<PovmElement> povm_elements(std::span<const KrausOperator> kraus);

// Max entry magnitude of (sum E) - I. Throws std::invalid_argument for an
// empty list, which carries no basis to compare against.
double completeness_defect(std::span<const PovmElement> povms);

struct RateOptions {
  // Rescale psi0 to unit norm instead of rejecting it.
  bool normalize = false;
  double normalization_tolerance = 1e-9;
  // Allowed |Im(psi^dagger E psi)|.
  double imaginary_tolerance = 1e-10;
};

// Pr(a^A | psi0) = psi0^dagger E^A psi0 for each element. Throws
// NormalizationError when psi0 is off unit norm and normalize is unset.
RateTable outcome_rates(std::span<const PovmElement> povms,
                        const EffectiveVector& psi0,
                        const RateOptions& options = {});

// Second route: |amplitude|^2 of the evolved state summed per final label.
std::map<Label, double> final_state_rates(const EffectiveVector& final_state);

double coincidence_rate(const RateTable& table, std::span<const int> detectors);
double coincidence_rate(const RateTable& table,
                        std::initializer_list<int> detectors);

// Sum over every label in which `detector` signals.
double detector_marginal(const RateTable& table, int detector);

double total_probability(const RateTable& table);

}  // namespace qdn
