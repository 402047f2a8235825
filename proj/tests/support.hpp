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

// Shared helpers for the test executables: seeded random bindings, the
// complex amplitudes behind alpha/beta, and a few closed-form references.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "qdn/expr.hpp"
#include "qdn/network.hpp"

namespace qdn::testing {

using cd = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double angle() { return uniform(-kPi, kPi); }
  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

struct AlphaBeta {
  cd alpha;
  cd beta;
};

// Uniform on the unit sphere of C^2.
inline AlphaBeta random_alpha_beta(Rng& rng) {
  cd a{rng.gauss(), rng.gauss()};
  cd b{rng.gauss(), rng.gauss()};
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return {a / n, b / n};
}

inline void bind_alpha_beta(Binding& b, cd alpha, cd beta) {
  b["alpha_re"] = alpha.real();
  b["alpha_im"] = alpha.imag();
  b["beta_re"] = beta.real();
  b["beta_im"] = beta.imag();
}

// A physically admissible random binding for any of the built-in scenarios:
// angles anywhere in [-pi, pi], (alpha, beta) normalized.
inline Binding random_binding(const NetworkDescription& net, Rng& rng) {
  Binding b;
  for (const auto& name : net.parameters) b[name] = rng.angle();
  if (b.count("alpha_re")) {
    const auto ab = random_alpha_beta(rng);
    bind_alpha_beta(b, ab.alpha, ab.beta);
  }
  return b;
}

// Symmetric splitters (t = r = 1/sqrt 2) and the two Franson phases.
inline Binding franson_binding(double phi1, double phi2) {
  Binding b;
  for (int k = 1; k <= 4; ++k) b["theta" + std::to_string(k)] = kPi / 4;
  b["phi1"] = phi1;
  b["phi2"] = phi2;
  return b;
}

inline double sq(double x) { return x * x; }

}  // namespace qdn::testing
