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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kitaev/lattice.hpp"
#include "kitaev/statevector.hpp"

namespace kitaev {

inline constexpr int kMaxExactPropagationQubits = 14;

enum class Propagator { Trotter, Exact };

struct QuenchSpec {
    PauliSum hamiltonian;
    double dt = 0.1;
    int steps = 10;
    int trotter_order = 2;
    std::vector<BondPair> pairs;
};

/// Bond-bond correlators on the grid t_s = s * dt, s = 0..steps.
struct CorrelatorSeries {
    std::string tag;
    std::vector<double> times;
    std::vector<double> m;   // <ZZ_first>(t)
    std::vector<cplx> c;     // <psi|U^dag ZZ_first U ZZ_second|psi>
    cplx static_C{0.0, 0.0}; // c(0) - m_first(0) m_second(0)
    std::vector<cplx> S;     // c(t) - m_first(t) m_second(0)
    double m_second_initial = 0.0;
};

struct StaticObservables {
    double magnetization_z = 0.0;  // sum_j <Z_j> / N
    double vortex_number = 0.0;    // <W_tot>
    double eta = 0.0;              // |2 W_tot / n - 1|
    std::vector<double> plaquettes;
};

/// One Trotter step of duration dt over the terms in their given order.
/// Order 1 is the plain product; order 2 is the symmetric split.
void trotter_step(StateVector &state, const PauliSum &hamiltonian, double dt, int order);

/// exp(-i t H)|state> by Lanczos (Krylov) exponentiation.
void exact_propagate(StateVector &state, const PauliSum &hamiltonian, double t);

std::vector<CorrelatorSeries> correlators(const StateVector &gs_state, const HoneycombTorus &lat,
                                          const QuenchSpec &quench, Propagator propagator = Propagator::Trotter);

StaticObservables static_observables(const StateVector &state, const HoneycombTorus &lat);

/// CSV: t, Re S, Im S, Re C, Im C, m, Re c, Im c.
std::string to_csv(const CorrelatorSeries &series);

}  // namespace kitaev
