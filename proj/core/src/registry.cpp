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

#include "qdn/registry.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "qdn/errors.hpp"

namespace qdn {

NormalizationError::NormalizationError(double norm)
    : Error("initial state is not normalized (norm " + std::to_string(norm) +
            ")"),
      norm_(norm) {}

Label labstate_label(std::span<const int> detectors) {
  Label label = 0;
  for (int m : detectors) {
    if (m < 1) {
      throw InvalidDetector("detector index " + std::to_string(m) +
                            " is not a positive integer");
    }
    if (m > kMaxRegisterRank) {
      throw InvalidDetector("detector index " + std::to_string(m) +
                            " exceeds the register rank cap of " +
                            std::to_string(kMaxRegisterRank));
    }
    const Label bit = Label{1} << (m - 1);
    if (label & bit) {
      throw InvalidDetector("detector " + std::to_string(m) +
                            " listed more than once");
    }
    label |= bit;
  }
  return label;
}

Label labstate_label(std::initializer_list<int> detectors) {
  return labstate_label(std::span<const int>(detectors.begin(), detectors.size()));
}

std::vector<int> label_detectors(std::int64_t label) {
  if (label < 0) {
    throw InvalidLabel("labstate label " + std::to_string(label) +
                       " is negative");
  }
  std::vector<int> detectors;
  auto bits = static_cast<std::uint64_t>(label);
  for (int m = 1; bits != 0; ++m, bits >>= 1) {
    if (bits & 1u) detectors.push_back(m);
  }
  return detectors;
}

int signal_count(Label label) { return std::popcount(label); }

std::string format_detectors(Label label) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (int m : label_detectors(label)) {
    if (!first) out << ',';
    out << m;
    first = false;
  }
  out << '}';
  return out.str();
}

std::string to_string(const BasisElement& element) {
  return "s" + std::to_string(element.suo_index) + "@" +
         format_detectors(element.label);
}

StageSpace::StageSpace(int stage_index, int suo_dim, int register_rank,
                       std::vector<BasisElement> basis)
    : stage_index_(stage_index),
      suo_dim_(suo_dim),
      register_rank_(register_rank),
      basis_(std::move(basis)) {
  if (stage_index_ < 0) {
    throw InvalidStage("stage index must be non-negative");
  }
  if (suo_dim_ < 1) {
    throw InvalidStage("stage " + std::to_string(stage_index_) +
                       ": SUO dimension must be at least 1");
  }
  if (register_rank_ < 0 || register_rank_ > kMaxRegisterRank) {
    throw InvalidStage("stage " + std::to_string(stage_index_) +
                       ": register rank must lie in [0, " +
                       std::to_string(kMaxRegisterRank) + "]");
  }
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const auto& e = basis_[k];
    if (e.suo_index < 1 || e.suo_index > suo_dim_) {
      throw InvalidStage("stage " + std::to_string(stage_index_) +
                         ": SUO index " + std::to_string(e.suo_index) +
                         " outside 1.." + std::to_string(suo_dim_));
    }
    if (static_cast<std::uint64_t>(e.label) >> register_rank_ != 0) {
      throw InvalidLabel("label " + std::to_string(e.label) +
                         " exceeds register of rank " +
                         std::to_string(register_rank_));
    }
    if (!positions_.emplace(e, k).second) {
      throw InvalidStage("stage " + std::to_string(stage_index_) +
                         ": duplicate basis element " + to_string(e));
    }
  }
}

std::uint64_t StageSpace::full_dimension() const noexcept {
  return static_cast<std::uint64_t>(suo_dim_) << register_rank_;
}

std::optional<std::size_t> StageSpace::index_of(
    const BasisElement& element) const {
  auto it = positions_.find(element);
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

bool StageSpace::admits(const BasisElement& element) const noexcept {
  return element.suo_index >= 1 && element.suo_index <= suo_dim_ &&
         (static_cast<std::uint64_t>(element.label) >> register_rank_) == 0;
}

StagePtr make_stage(int stage_index, int suo_dim, int register_rank,
                    std::vector<BasisElement> basis) {
  return std::make_shared<const StageSpace>(stage_index, suo_dim,
                                            register_rank, std::move(basis));
}

EffectiveVector::EffectiveVector(StagePtr s)
    : stage(std::move(s)),
      coefficients(Eigen::VectorXcd::Zero(
          static_cast<Eigen::Index>(stage ? stage->size() : 0))) {}

EffectiveVector::EffectiveVector(StagePtr s, Eigen::VectorXcd c)
    : stage(std::move(s)), coefficients(std::move(c)) {
  if (!stage ||
      static_cast<std::size_t>(coefficients.size()) != stage->size()) {
    throw DimensionError("coefficient count does not match the stage basis");
  }
}

double EffectiveVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& c : coefficients) sum += std::norm(c);
  return sum;
}

std::complex<double> EffectiveVector::operator[](
    const BasisElement& element) const {
  auto k = stage->index_of(element);
  if (!k) return {0.0, 0.0};
  return coefficients[static_cast<Eigen::Index>(*k)];
}

}  // namespace qdn
