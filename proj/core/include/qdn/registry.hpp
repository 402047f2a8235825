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

#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdn {

// Labstate label: bit (m-1) is set iff detector m signals. Label 0 is the
// void state.
using Label = std::uint32_t;

inline constexpr int kMaxRegisterRank = 30;

Label labstate_label(std::span<const int> detectors);
Label labstate_label(std::initializer_list<int> detectors);

// Inverse of labstate_label; detectors come back sorted ascending.
std::vector<int> label_detectors(std::int64_t label);

// Number of detectors that signal in `label`.
int signal_count(Label label);

// "{1,2}" style rendering used by diagnostics and output.
std::string format_detectors(Label label);

struct BasisElement {
  int suo_index = 1;  // 1-based
  Label label = 0;

  friend auto operator<=>(const BasisElement&, const BasisElement&) = default;
};

std::string to_string(const BasisElement& element);

/// One stage of the apparatus: an SUO space of dimension `suo_dim`, a
/// register of `register_rank` detector qubits, and the ordered effective
/// basis actually used in computations. Immutable once built.
class StageSpace {
 public:
  StageSpace(int stage_index, int suo_dim, int register_rank,
             std::vector<BasisElement> basis);

  int stage_index() const noexcept { return stage_index_; }
  int suo_dim() const noexcept { return suo_dim_; }
  int register_rank() const noexcept { return register_rank_; }
  const std::vector<BasisElement>& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return basis_.size(); }

  // d_n * 2^r_n, the dimension of the full SUO (x) register space.
  std::uint64_t full_dimension() const noexcept;

  std::optional<std::size_t> index_of(const BasisElement& element) const;
  bool contains(const BasisElement& element) const {
    return index_of(element).has_value();
  }

  // Whether `element` fits the SUO dimension and register rank.
  bool admits(const BasisElement& element) const noexcept;

  friend bool operator==(const StageSpace& a, const StageSpace& b) {
    return a.stage_index_ == b.stage_index_ && a.suo_dim_ == b.suo_dim_ &&
           a.register_rank_ == b.register_rank_ && a.basis_ == b.basis_;
  }

 private:
  int stage_index_;
  int suo_dim_;
  int register_rank_;
  std::vector<BasisElement> basis_;
  std::map<BasisElement, std::size_t> positions_;
};

using StagePtr = std::shared_ptr<const StageSpace>;

StagePtr make_stage(int stage_index, int suo_dim, int register_rank,
                    std::vector<BasisElement> basis);

// Coefficients of a state over a stage's effective basis.
struct EffectiveVector {
  StagePtr stage;
  Eigen::VectorXcd coefficients;

  EffectiveVector() = default;
  explicit EffectiveVector(StagePtr s);
  EffectiveVector(StagePtr s, Eigen::VectorXcd c);

  double squared_norm() const;
  std::complex<double> operator[](const BasisElement& element) const;
};

}  // namespace qdn
