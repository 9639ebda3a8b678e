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

#include "kitaev/ansatz.hpp"

#include <string>

#include "kitaev/error.hpp"

namespace kitaev {

namespace {

void check_count(std::size_t got, int want, const char *what) {
    if (static_cast<int>(got) != want) {
        throw Error(ErrorCode::ParamCountMismatch,
                    std::string(what) + " expects " + std::to_string(want) + " parameters, got " + std::to_string(got));
    }
}

void set_angle(Gate &gate, double angle) {
    if (auto *r = std::get_if<PauliRotation>(&gate)) {
        r->angle = angle;
    } else if (auto *c = std::get_if<ControlledRotation>(&gate)) {
        c->angle = angle;
    } else {
        throw Error(ErrorCode::NonDifferentiableGate, "parameter attached to a fixed gate");
    }
}

}  // namespace

void ParamCircuit::set_parameters(std::span<const double> theta) {
    check_count(theta.size(), num_params, "circuit");
    for (std::size_t g = 0; g < gates.size(); ++g) {
        if (param_index[g] >= 0) {
            set_angle(gates[g], theta[param_index[g]]);
        }
    }
}

int centralizer_param_count(const HoneycombTorus &lat) {
    return static_cast<int>(lat.bonds.size());
}

int vortex_param_count(const HoneycombTorus &lat, VortexLayerKind kind) {
    int single = 3 * lat.N;
    return kind == VortexLayerKind::SingleSiteRotations ? single : single + static_cast<int>(lat.bonds.size());
}

int params_per_layer(const HoneycombTorus &lat, const AnsatzSpec &spec) {
    return centralizer_param_count(lat) + (spec.include_vortex_layers ? vortex_param_count(lat, spec.vortex_kind) : 0);
}

int parameter_count(const HoneycombTorus &lat, const AnsatzSpec &spec) {
    return spec.depth * params_per_layer(lat, spec);
}

int parameter_index(const HoneycombTorus &lat, const AnsatzSpec &spec, const ParamSlot &slot) {
    const int nc = centralizer_param_count(lat);
    const int ns = 3 * lat.N;
    const int nb = static_cast<int>(lat.bonds.size());
    int offset = 0;
    int limit = 0;
    switch (slot.block) {
        case ParamBlock::Centralizer:
            limit = nc;
            break;
        case ParamBlock::VortexSingle:
            offset = nc;
            limit = spec.include_vortex_layers ? ns : 0;
            break;
        case ParamBlock::VortexControlled:
            offset = nc + ns;
            limit = spec.include_vortex_layers && spec.vortex_kind == VortexLayerKind::SingleSitePlusControlled ? nb : 0;
            break;
    }
    if (slot.layer < 0 || slot.layer >= spec.depth || slot.generator < 0 || slot.generator >= limit) {
        throw Error(ErrorCode::IndexOutOfRange, "parameter slot outside the ansatz layout");
    }
    return slot.layer * params_per_layer(lat, spec) + offset + slot.generator;
}

ParamSlot parameter_slot(const HoneycombTorus &lat, const AnsatzSpec &spec, int index) {
    if (index < 0 || index >= parameter_count(lat, spec)) {
        throw Error(ErrorCode::IndexOutOfRange, "parameter index " + std::to_string(index));
    }
    const int per = params_per_layer(lat, spec);
    const int nc = centralizer_param_count(lat);
    const int ns = 3 * lat.N;
    int layer = index / per;
    int r = index % per;
    if (r < nc) {
        return {layer, ParamBlock::Centralizer, r};
    }
    if (r < nc + ns) {
        return {layer, ParamBlock::VortexSingle, r - nc};
    }
    return {layer, ParamBlock::VortexControlled, r - nc - ns};
}

std::vector<PauliString> centralizer_generators(const HoneycombTorus &lat) {
    std::vector<PauliString> out;
    out.reserve(lat.bonds.size());
    for (const auto &b : lat.bonds) {
        out.push_back(bond_string(lat, b));
    }
    return out;
}

Axis controlled_target_axis(Axis bond_axis) {
    switch (bond_axis) {
        case Axis::X: return Axis::Y;
        case Axis::Y: return Axis::Z;
        case Axis::Z: return Axis::X;
    }
    return Axis::X;
}

std::vector<Gate> build_centralizer_layer(const HoneycombTorus &lat, std::span<const double> layer_params) {
    check_count(layer_params.size(), centralizer_param_count(lat), "centralizer layer");
    std::vector<Gate> gates;
    gates.reserve(lat.bonds.size());
    for (std::size_t b = 0; b < lat.bonds.size(); ++b) {
        gates.emplace_back(PauliRotation{bond_string(lat, lat.bonds[b]), layer_params[b]});
    }
    return gates;
}

std::vector<Gate> build_vortex_layer(const HoneycombTorus &lat, std::span<const double> layer_params,
                                     VortexLayerKind kind) {
    check_count(layer_params.size(), vortex_param_count(lat, kind), "vortex layer");
    std::vector<Gate> gates;
    std::size_t k = 0;
    for (int site = 0; site < lat.N; ++site) {
        for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
            gates.emplace_back(PauliRotation{PauliString::single(lat.N, site, a), layer_params[k++]});
        }
    }
    if (kind == VortexLayerKind::SingleSitePlusControlled) {
        for (const auto &b : lat.bonds) {
            gates.emplace_back(ControlledRotation{b.i, b.j, controlled_target_axis(b.axis), layer_params[k++]});
        }
    }
    return gates;
}

ParamCircuit assemble(const HoneycombTorus &lat, const AnsatzSpec &spec, std::span<const double> theta) {
    if (spec.depth < 0) {
        throw Error(ErrorCode::ParamCountMismatch, "negative ansatz depth");
    }
    const int total = parameter_count(lat, spec);
    check_count(theta.size(), total, "ansatz");
    ParamCircuit circuit;
    circuit.num_qubits = lat.N;
    circuit.num_params = total;
    const int per = params_per_layer(lat, spec);
    const int nc = centralizer_param_count(lat);
    for (int layer = 0; layer < spec.depth; ++layer) {
        int base = layer * per;
        auto cgates = build_centralizer_layer(lat, theta.subspan(base, nc));
        for (std::size_t g = 0; g < cgates.size(); ++g) {
            circuit.gates.push_back(std::move(cgates[g]));
            circuit.param_index.push_back(base + static_cast<int>(g));
        }
        if (spec.include_vortex_layers) {
            auto vgates = build_vortex_layer(lat, theta.subspan(base + nc, per - nc), spec.vortex_kind);
            for (std::size_t g = 0; g < vgates.size(); ++g) {
                circuit.gates.push_back(std::move(vgates[g]));
                circuit.param_index.push_back(base + nc + static_cast<int>(g));
            }
        }
    }
    return circuit;
}

void run_circuit(StateVector &state, const ParamCircuit &circuit) {
    for (const auto &g : circuit.gates) {
        apply_gate(state, g);
    }
}

nlohmann::json to_json(const ParamCircuit &circuit) {
    using nlohmann::json;
    json gates = json::array();
    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        json entry = std::visit(
            [](const auto &gate) -> json {
                using T = std::decay_t<decltype(gate)>;
                if constexpr (std::is_same_v<T, Hadamard>) {
                    return {{"kind", "hadamard"}, {"qubit", gate.qubit}};
                } else if constexpr (std::is_same_v<T, Cnot>) {
                    return {{"kind", "cnot"}, {"control", gate.control}, {"target", gate.target}};
                } else if constexpr (std::is_same_v<T, PauliGate>) {
                    return {{"kind", "pauli"}, {"op", gate.op.to_string()}};
                } else if constexpr (std::is_same_v<T, PauliRotation>) {
                    return {{"kind", "pauli_rotation"}, {"generator", gate.generator.to_string()}, {"angle", gate.angle}};
                } else {
                    return {{"kind", "controlled_rotation"},
                            {"control", gate.control},
                            {"target", gate.target},
                            {"axis", std::string(1, axis_char(gate.axis))},
                            {"angle", gate.angle}};
                }
            },
            circuit.gates[g]);
        entry["param"] = circuit.param_index[g];
        gates.push_back(std::move(entry));
    }
    return {{"num_qubits", circuit.num_qubits}, {"num_params", circuit.num_params}, {"gates", gates}};
}

}  // namespace kitaev
