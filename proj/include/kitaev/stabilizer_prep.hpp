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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kitaev/lattice.hpp"
#include "kitaev/statevector.hpp"

namespace kitaev {

/// Target stabilizer sector: total vortex number and the two loop signs.
struct SectorSpec {
    int vortex_count = 0;
    std::array<int, 2> loop_signs{1, 1};
    /// Optional per-plaquette target (+1/-1); when set it must hold
    /// vortex_count entries equal to -1 and pins the vortex positions.
    std::vector<int> plaquette_signs;
};

struct StabilizeResult {
    StateVector state;
    /// Sampled eigenvalue per stabilizer (plaquettes, then the two loops).
    std::vector<int> measured_signs;
    std::vector<double> branch_probabilities;
};

/// Single-qubit Pauli corrections applied during preparation.
struct AppliedChain {
    std::string purpose;  // "annihilate", "create" or "loop"
    std::vector<PauliString> paulis;
};

struct PrepReport {
    std::vector<int> measured_signs;
    std::vector<double> branch_probabilities;
    std::vector<AppliedChain> chains;
    std::vector<double> final_plaquettes;
    std::array<double, 2> final_loops{};
    double final_vortex_count = 0.0;
};

struct PreparedState {
    StateVector state;
    PrepReport report;
};

/// Projects |0...0> onto a joint eigenstate of every plaquette and loop
/// string, sampling each outcome with the Born rule from rng_seed.
StabilizeResult stabilize(const HoneycombTorus &lat, std::uint64_t rng_seed);

/// Shortest chain of single-qubit Paulis whose product anticommutes with
/// plaquettes a and b and commutes with every other stabilizer.
std::vector<PauliString> flip_chain(const HoneycombTorus &lat, int plaquette_a, int plaquette_b);

/// Plaquette-neutral chain that anticommutes with loop `which` only.
std::vector<PauliString> loop_flip_chain(const HoneycombTorus &lat, int which);

/// stabilize(), then pair vortices off (or create pairs) until the count is
/// sector.vortex_count, then fix the loop signs. With an explicit plaquette
/// pattern, mismatched plaquettes are paired off instead.
PreparedState prepare_sector(const HoneycombTorus &lat, const SectorSpec &sector, std::uint64_t rng_seed);

/// <W_tot> = (n - sum_p <w_p>)/2.
double vortex_count(const StateVector &state, const HoneycombTorus &lat);

/// Expectations of all n + 2 stabilizer strings, in stabilizer_strings order.
std::vector<double> stabilizer_expectations(const StateVector &state, const HoneycombTorus &lat);

nlohmann::json to_json(const PrepReport &report);

}  // namespace kitaev
