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

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "kitaev/ansatz.hpp"
#include "kitaev/stabilizer_prep.hpp"

namespace kitaev {

struct GateCounts {
    long rotations = 0;
    long hadamards = 0;
    long cnots = 0;

    GateCounts &operator+=(const GateCounts &o) {
        rotations += o.rotations;
        hadamards += o.hadamards;
        cnots += o.cnots;
        return *this;
    }
    friend bool operator==(const GateCounts &, const GateCounts &) = default;
};

/// Counts in the {single-qubit rotation, Hadamard, CNOT} gate set, with a
/// per-phase breakdown ("stabilization", "ansatz", "dynamics").
struct GateBudget {
    long n_R = 0;
    long n_H = 0;
    long n_CNOT = 0;
    std::map<std::string, GateCounts> phases;

    void add(const std::string &phase, const GateCounts &counts);
    GateBudget &operator+=(const GateBudget &other);
};

/// Executable decomposition: Hadamards, CNOTs and single-qubit Pauli rotations.
struct CompiledCircuit {
    std::vector<Gate> gates;
    GateBudget budget;
};

/// Pauli rotations on weight-w strings become basis changes (H pairs for X,
/// RX(+-pi/2) pairs for Y), a CNOT ladder of 2(w-1) CNOTs and one RZ.
/// Controlled rotations become a basis change plus RZ-CNOT-RZ-CNOT.
CompiledCircuit compile(const ParamCircuit &circuit, const std::string &phase = "ansatz");

/// Budget of the stabilization stage: one ancilla readout per stabilizer
/// (w CNOTs plus basis changes for a weight-w string) and one rotation per
/// correcting Pauli.
GateBudget compile(const PrepReport &report, const HoneycombTorus &lat);

/// Budget of steps Trotter steps of the given order.
GateBudget compile_trotter(const PauliSum &hamiltonian, int steps, int order);

/// F = (1 - eps1)^(n_R + n_H) (1 - eps2)^n_CNOT.
double estimate_fidelity(const GateBudget &budget, double eps1, double eps2);

nlohmann::json to_json(const GateBudget &budget);

}  // namespace kitaev
