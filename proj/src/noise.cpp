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

#include "kitaev/noise.hpp"

#include <cmath>

#include "kitaev/error.hpp"

namespace kitaev {

namespace {

struct Emitter {
    int num_qubits;
    std::vector<Gate> gates;
    GateCounts counts;

    void h(int q) {
        gates.emplace_back(Hadamard{q});
        ++counts.hadamards;
    }
    void cx(int c, int t) {
        gates.emplace_back(Cnot{c, t});
        ++counts.cnots;
    }
    void rot(int q, Axis a, double angle) {
        gates.emplace_back(PauliRotation{PauliString::single(num_qubits, q, a), angle});
        ++counts.rotations;
    }
    // Maps the axis onto Z (forward) or back (reverse).
    void basis(int q, char pauli, bool forward) {
        if (pauli == 'X') {
            h(q);
        } else if (pauli == 'Y') {
            rot(q, Axis::X, forward ? M_PI / 2 : -M_PI / 2);
        }
    }

    void pauli_rotation(const PauliString &p, double angle) {
        if (p.phase_exponent() == 2) {
            angle = -angle;
        }
        std::vector<int> support = p.support();
        if (support.empty()) {
            return;  // global phase
        }
        for (int q : support) {
            basis(q, p.at(q), true);
        }
        for (std::size_t k = 0; k + 1 < support.size(); ++k) {
            cx(support[k], support[k + 1]);
        }
        rot(support.back(), Axis::Z, angle);
        for (std::size_t k = support.size() - 1; k-- > 0;) {
            cx(support[k], support[k + 1]);
        }
        for (int q : support) {
            basis(q, p.at(q), false);
        }
    }

    void controlled_rotation(const ControlledRotation &g) {
        const char pauli = axis_char(g.axis);
        basis(g.target, pauli, true);
        cx(g.control, g.target);
        rot(g.target, Axis::Z, -g.angle / 2);
        cx(g.control, g.target);
        rot(g.target, Axis::Z, g.angle / 2);
        basis(g.target, pauli, false);
    }
};

}  // namespace

void GateBudget::add(const std::string &phase, const GateCounts &counts) {
    phases[phase] += counts;
    n_R += counts.rotations;
    n_H += counts.hadamards;
    n_CNOT += counts.cnots;
}

GateBudget &GateBudget::operator+=(const GateBudget &other) {
    for (const auto &[phase, counts] : other.phases) {
        add(phase, counts);
    }
    return *this;
}

CompiledCircuit compile(const ParamCircuit &circuit, const std::string &phase) {
    Emitter e{circuit.num_qubits, {}, {}};
    for (const auto &gate : circuit.gates) {
        std::visit(
            [&](const auto &g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, Hadamard>) {
                    e.h(g.qubit);
                } else if constexpr (std::is_same_v<T, Cnot>) {
                    e.cx(g.control, g.target);
                } else if constexpr (std::is_same_v<T, PauliGate>) {
                    // A pi rotation per factor: equal up to a global phase.
                    for (int q : g.op.support()) {
                        e.rot(q, axis_from_char(g.op.at(q)), M_PI);
                    }
                } else if constexpr (std::is_same_v<T, PauliRotation>) {
                    if (!g.generator.is_hermitian()) {
                        throw Error(ErrorCode::UnsupportedGate, "non-Hermitian rotation generator");
                    }
                    e.pauli_rotation(g.generator, g.angle);
                } else {
                    e.controlled_rotation(g);
                }
            },
            gate);
    }
    CompiledCircuit out;
    out.gates = std::move(e.gates);
    out.budget.add(phase, e.counts);
    return out;
}

GateBudget compile(const PrepReport &report, const HoneycombTorus &lat) {
    GateCounts counts;
    for (const auto &s : stabilizer_strings(lat)) {
        for (int q : s.support()) {
            ++counts.cnots;
            char c = s.at(q);
            if (c == 'X') {
                counts.hadamards += 2;
            } else if (c == 'Y') {
                counts.rotations += 2;
            }
        }
    }
    for (const auto &chain : report.chains) {
        counts.rotations += static_cast<long>(chain.paulis.size());
    }
    GateBudget budget;
    budget.add("stabilization", counts);
    return budget;
}

GateBudget compile_trotter(const PauliSum &hamiltonian, int steps, int order) {
    ParamCircuit step;
    for (const auto &t : hamiltonian) {
        step.num_qubits = t.op.num_qubits();
        step.gates.emplace_back(PauliRotation{t.op, 2.0 * t.coeff});
        step.param_index.push_back(-1);
    }
    GateCounts one = compile(step, "dynamics").budget.phases["dynamics"];
    GateCounts total;
    for (int s = 0; s < steps * order; ++s) {
        total += one;
    }
    GateBudget budget;
    budget.add("dynamics", total);
    return budget;
}

double estimate_fidelity(const GateBudget &budget, double eps1, double eps2) {
    if (!(eps1 >= 0.0 && eps1 <= 1.0 && eps2 >= 0.0 && eps2 <= 1.0)) {
        throw Error(ErrorCode::ConfigInvalid, "error rates must lie in [0, 1]");
    }
    const double singles = static_cast<double>(budget.n_R + budget.n_H);
    return std::pow(1.0 - eps1, singles) * std::pow(1.0 - eps2, static_cast<double>(budget.n_CNOT));
}

nlohmann::json to_json(const GateBudget &budget) {
    nlohmann::json phases = nlohmann::json::object();
    for (const auto &[name, c] : budget.phases) {
        phases[name] = {{"rotations", c.rotations}, {"hadamards", c.hadamards}, {"cnots", c.cnots}};
    }
    return {{"n_R", budget.n_R}, {"n_H", budget.n_H}, {"n_CNOT", budget.n_CNOT}, {"phases", phases}};
}

}  // namespace kitaev
