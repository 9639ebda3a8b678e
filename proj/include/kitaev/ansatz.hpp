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

#include <span>
#include <vector>

#include <json.hpp>

#include "kitaev/lattice.hpp"
#include "kitaev/statevector.hpp"

namespace kitaev {

enum class VortexLayerKind {
    SingleSiteRotations,
    SingleSitePlusControlled,
};

/// Layered ansatz: depth blocks, each a centralizer layer optionally
/// followed by a vortex layer.
struct AnsatzSpec {
    int depth = 1;
    bool include_vortex_layers = false;
    VortexLayerKind vortex_kind = VortexLayerKind::SingleSiteRotations;
};

/// Gate list with, per gate, the flat parameter index driving its angle
/// (-1 for fixed gates).
struct ParamCircuit {
    int num_qubits = 0;
    int num_params = 0;
    std::vector<Gate> gates;
    std::vector<int> param_index;

    /// Rewrites the angle of every parameterized gate from theta.
    void set_parameters(std::span<const double> theta);
};

enum class ParamBlock { Centralizer, VortexSingle, VortexControlled };

struct ParamSlot {
    int layer = 0;
    ParamBlock block = ParamBlock::Centralizer;
    int generator = 0;

    friend bool operator==(const ParamSlot &, const ParamSlot &) = default;
};

int centralizer_param_count(const HoneycombTorus &lat);
int vortex_param_count(const HoneycombTorus &lat, VortexLayerKind kind);
int params_per_layer(const HoneycombTorus &lat, const AnsatzSpec &spec);
int parameter_count(const HoneycombTorus &lat, const AnsatzSpec &spec);
int parameter_index(const HoneycombTorus &lat, const AnsatzSpec &spec, const ParamSlot &slot);
ParamSlot parameter_slot(const HoneycombTorus &lat, const AnsatzSpec &spec, int index);

/// The 3N/2 bond generators K^a_ij, grouped x, y, z in lattice bond order.
std::vector<PauliString> centralizer_generators(const HoneycombTorus &lat);

/// Target axis of the controlled vortex rotation on a bond of the given axis.
Axis controlled_target_axis(Axis bond_axis);

/// exp(-i theta_b K_b / 2) for every bond, x-bonds first, then y, then z.
std::vector<Gate> build_centralizer_layer(const HoneycombTorus &lat, std::span<const double> layer_params);

/// Single-site rotations about x, y, z on every site (site-major); the
/// controlled kind appends one controlled rotation per bond (i, j): control
/// i, target j about controlled_target_axis(bond axis).
std::vector<Gate> build_vortex_layer(const HoneycombTorus &lat, std::span<const double> layer_params,
                                     VortexLayerKind kind);

ParamCircuit assemble(const HoneycombTorus &lat, const AnsatzSpec &spec, std::span<const double> theta);

void run_circuit(StateVector &state, const ParamCircuit &circuit);

nlohmann::json to_json(const ParamCircuit &circuit);

}  // namespace kitaev
