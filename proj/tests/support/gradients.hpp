// Copyright 2026 The kitaev-gsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Finite-difference reference for the adjoint gradients.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "kitaev/vqe.hpp"

namespace testing_support {

/// (E(theta + h e_k) - E(theta - h e_k)) / 2h for every parameter.
inline std::vector<double> central_differences(const kitaev::StateVector &state0, kitaev::ParamCircuit circuit,
                                               const kitaev::PauliSum &h, std::vector<double> theta, double step) {
    std::vector<double> out(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const double keep = theta[k];
        theta[k] = keep + step;
        circuit.set_parameters(theta);
        const double up = kitaev::energy(state0, circuit, h);
        theta[k] = keep - step;
        circuit.set_parameters(theta);
        const double down = kitaev::energy(state0, circuit, h);
        theta[k] = keep;
        out[k] = (up - down) / (2.0 * step);
    }
    return out;
}

/// max_k |a_k - b_k| / max(|b_k|, floor). The floor keeps components that
/// vanish by symmetry from turning roundoff into a large ratio.
inline double max_relative_error(const std::vector<double> &a, const std::vector<double> &b, double floor = 1e-3) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(std::abs(b[k]), floor));
    }
    return worst;
}

}  // namespace testing_support
