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

#include "qdn/povm.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qdn/errors.hpp"

namespace qdn {

std::vector<KrausOperator> kraus_operators(const TransitionMatrix& total,
                                           double zero_tolerance) {
  const auto& final_basis = total.target->basis();
  std::map<Label, std::vector<Eigen::Index>> rows_by_label;
  for (std::size_t k = 0; k < final_basis.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    if (total.entries.cols() == 0) break;
    if (total.entries.row(row).cwiseAbs().maxCoeff() > zero_tolerance) {
      rows_by_label[final_basis[k].label].push_back(row);
    }
  }

  std::vector<KrausOperator> out;
  out.reserve(rows_by_label.size());
  for (const auto& [label, rows] : rows_by_label) {
    KrausOperator op;
    op.label = label;
    op.initial = total.source;
    op.matrix.resize(static_cast<Eigen::Index>(rows.size()), total.entries.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      op.matrix.row(static_cast<Eigen::Index>(r)) = total.entries.row(rows[r]);
      op.suo_rows.push_back(final_basis[static_cast<std::size_t>(rows[r])].suo_index);
    }
    out.push_back(std::move(op));
  }
  return out;
}

std::vector<PovmElement> povm_elements(std::span<const KrausOperator> kraus) {
  std::vector<PovmElement> out;
  out.reserve(kraus.size());
  for (const auto& m : kraus) {
    out.push_back({m.label, m.initial, m.matrix.adjoint() * m.matrix});
  }
  return out;
}

double completeness_defect(std::span<const PovmElement> povms) {
  if (povms.empty()) {
    throw std::invalid_argument("completeness check needs at least one element");
  }
  const auto n = povms.front().matrix.rows();
  Eigen::MatrixXcd sum = -Eigen::MatrixXcd::Identity(n, n);
  for (const auto& e : povms) {
    if (e.matrix.rows() != n) {
      throw DimensionError("POVM elements act on different bases");
    }
    sum += e.matrix;
  }
  return n == 0 ? 0.0 : sum.cwiseAbs().maxCoeff();
}

RateTable outcome_rates(std::span<const PovmElement> povms,
                        const EffectiveVector& psi0,
                        const RateOptions& options) {
  Eigen::VectorXcd psi = psi0.coefficients;
  const double norm2 = psi0.squared_norm();
  if (options.normalize) {
    if (norm2 == 0.0) throw NormalizationError(0.0);
    psi /= std::sqrt(norm2);
  } else if (std::abs(norm2 - 1.0) > options.normalization_tolerance) {
    throw NormalizationError(std::sqrt(norm2));
  }

  RateTable table;
  for (const auto& e : povms) {
    if (e.matrix.rows() != psi.size()) {
      throw DimensionError("initial state and POVM element bases differ");
    }
    const std::complex<double> p = psi.dot(e.matrix * psi);  // conjugates psi
    if (std::abs(p.imag()) > options.imaginary_tolerance) {
      std::ostringstream msg;
      msg << "outcome rate for label " << e.label
          << " has imaginary part " << p.imag();
      throw DomainError(msg.str());
    }
    table.rates[e.label] = p.real();
  }
  return table;
}

std::map<Label, double> final_state_rates(const EffectiveVector& final_state) {
  std::map<Label, double> rates;
  const auto& basis = final_state.stage->basis();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    rates[basis[k].label] +=
        std::norm(final_state.coefficients[static_cast<Eigen::Index>(k)]);
  }
  return rates;
}

double coincidence_rate(const RateTable& table,
                        std::span<const int> detectors) {
  auto it = table.rates.find(labstate_label(detectors));
  return it == table.rates.end() ? 0.0 : it->second;
}

double coincidence_rate(const RateTable& table,
                        std::initializer_list<int> detectors) {
  return coincidence_rate(
      table, std::span<const int>(detectors.begin(), detectors.size()));
}

double detector_marginal(const RateTable& table, int detector) {
  const Label bit = labstate_label({detector});
  double sum = 0.0;
  for (const auto& [label, p] : table.rates) {
    if (label & bit) sum += p;
  }
  return sum;
}

double total_probability(const RateTable& table) {
  double sum = 0.0;
  for (const auto& [label, p] : table.rates) sum += p;
  return sum;
}

}  // namespace qdn
