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

#include <string>
#include <string_view>
#include <vector>

#include "qdn/network.hpp"

namespace qdn {

// Complete networks for the worked experiments:
//
//   wollaston     polarizing splitter on (alpha s1 + beta s2) a^1
//   beamsplitter  single photon on a two-port non-polarizing splitter
//   brandt        Wollaston, BS1 + quarter-turn rotator, BS2 (three outcomes)
//   franson_i     two-photon Franson interferometer, dT << t2
//   franson_ii    t1 << dT: short and long arrivals on eight detectors
//   franson_iii   t2 << dT << t1: L-L arrivals relabelled onto the S-S
//                 detectors (post-selection)
//
// Complex amplitudes alpha, beta are exposed as alpha_re, alpha_im, beta_re,
// beta_im. Splitter k has t_k = cos(theta_k), r_k = sin(theta_k); the single
// beamsplitter uses `theta`. Franson phases are phi1, phi2.
NetworkDescription build_scenario(std::string_view name);

const std::vector<std::string>& scenario_names();

}  // namespace qdn
