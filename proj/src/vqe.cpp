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

#include "kitaev/vqe.hpp"

#include <algorithm>
#include <cmath>

#include "kitaev/error.hpp"
#include "kitaev/random.hpp"

namespace kitaev {

void OptimizerConfig::validate() const {
    if (epochs < 0) {
        throw Error(ErrorCode::ConfigInvalid, "epochs must be non-negative");
    }
    if (!(learning_rate > 0.0)) {
        throw Error(ErrorCode::ConfigInvalid, "learning_rate must be positive");
    }
    if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
        throw Error(ErrorCode::ConfigInvalid, "Adam betas must lie in [0, 1)");
    }
    if (!(init_scale >= 0.0)) {
        throw Error(ErrorCode::ConfigInvalid, "init_scale must be non-negative");
    }
}

AdamOptimizer::AdamOptimizer(std::size_t num_params, const OptimizerConfig &config)
    : lr_(config.learning_rate),
      beta1_(config.adam_beta1),
      beta2_(config.adam_beta2),
      eps_(config.adam_eps),
      m_(num_params, 0.0),
      v_(num_params, 0.0) {
}

void AdamOptimizer::step(std::vector<double> &theta, const std::vector<double> &gradient) {
    if (theta.size() != m_.size() || gradient.size() != m_.size()) {
        throw Error(ErrorCode::ParamCountMismatch, "Adam state and parameter sizes differ");
    }
    ++t_;
    const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (std::size_t k = 0; k < theta.size(); ++k) {
        m_[k] = beta1_ * m_[k] + (1.0 - beta1_) * gradient[k];
        v_[k] = beta2_ * v_[k] + (1.0 - beta2_) * gradient[k] * gradient[k];
        theta[k] -= lr_ * (m_[k] / c1) / (std::sqrt(v_[k] / c2) + eps_);
    }
}

double energy(const StateVector &state0, const ParamCircuit &circuit, const PauliSum &hamiltonian) {
    StateVector psi = state0;
    run_circuit(psi, circuit);
    return expectation(psi, hamiltonian);
}

EnergyGradient energy_and_gradient(const StateVector &state0, const ParamCircuit &circuit,
                                   const PauliSum &hamiltonian, StateVector *forward_state) {
    StateVector psi = state0;
    run_circuit(psi, circuit);
    if (forward_state != nullptr) {
        *forward_state = psi;
    }
    StateVector lambda(psi.num_qubits());
    apply_sum(hamiltonian, psi, lambda);

    EnergyGradient out;
    out.energy = inner(psi, lambda).real();
    out.gradient.assign(circuit.num_params, 0.0);

    for (std::size_t g = circuit.gates.size(); g-- > 0;) {
        const Gate &gate = circuit.gates[g];
        const int idx = circuit.param_index[g];
        if (idx >= 0) {
            cplx z;
            if (const auto *r = std::get_if<PauliRotation>(&gate)) {
                z = matrix_element(lambda, r->generator, psi);
            } else if (const auto *c = std::get_if<ControlledRotation>(&gate)) {
                z = matrix_element(lambda, PauliString::single(psi.num_qubits(), c->target, c->axis), psi,
                                   std::uint64_t{1} << c->control);
            } else {
                throw Error(ErrorCode::NonDifferentiableGate, "gate " + std::to_string(g) + " carries a parameter");
            }
            // dE/dtheta = 2 Re <lambda|(-i G/2)|psi> = Im <lambda|G|psi>.
            out.gradient[idx] += z.imag();
        }
        if (g > 0) {
            apply_inverse(psi, gate);
            apply_inverse(lambda, gate);
        }
    }
    return out;
}

std::vector<double> gradient(const StateVector &state0, const ParamCircuit &circuit, const PauliSum &hamiltonian) {
    return energy_and_gradient(state0, circuit, hamiltonian).gradient;
}

std::vector<double> initial_parameters(int count, const OptimizerConfig &config) {
    Rng rng(config.seed * 0x9e3779b97f4a7c15ull + 0x1234567ull);
    std::vector<double> theta(count);
    for (auto &t : theta) {
        t = uniform(rng, -config.init_scale, config.init_scale);
    }
    return theta;
}

TrainingTrace train_from_state(const StateVector &state0, const HoneycombTorus &lat, const AnsatzSpec &ansatz,
                               const PauliSum &hamiltonian, const OptimizerConfig &config,
                               const TrainingOptions &options) {
    config.validate();
    const int count = parameter_count(lat, ansatz);
    std::vector<double> theta = options.initial_theta.empty() ? initial_parameters(count, config) : options.initial_theta;
    if (static_cast<int>(theta.size()) != count) {
        throw Error(ErrorCode::ParamCountMismatch, "warm-start vector has " + std::to_string(theta.size()) +
                                                       " entries, ansatz needs " + std::to_string(count));
    }

    TrainingTrace trace;
    for (const auto &s : options.monitored) {
        trace.stabilizers_initial.push_back(expectation(state0, s));
    }

    ParamCircuit circuit = assemble(lat, ansatz, theta);
    AdamOptimizer adam(theta.size(), config);
    StateVector psi(state0.num_qubits());
    for (int epoch = 0;; ++epoch) {
        circuit.set_parameters(theta);
        EnergyGradient eg = energy_and_gradient(state0, circuit, hamiltonian, &psi);
        EpochRecord rec;
        rec.epoch = epoch;
        rec.energy = eg.energy;
        double g2 = 0.0;
        for (double g : eg.gradient) {
            g2 += g * g;
        }
        rec.grad_norm = std::sqrt(g2);
        if (options.oracle != nullptr) {
            rec.infidelity = 1.0 - subspace_fidelity(*options.oracle, psi);
        }
        if (!options.monitored.empty()) {
            double drift = 0.0;
            for (std::size_t s = 0; s < options.monitored.size(); ++s) {
                drift = std::max(drift, std::abs(expectation(psi, options.monitored[s]) - trace.stabilizers_initial[s]));
            }
            rec.symmetry_drift = drift;
        }
        trace.records.push_back(rec);
        if (epoch == config.epochs) {
            break;
        }
        adam.step(theta, eg.gradient);
    }
    trace.theta_opt = theta;
    trace.final_state = std::move(psi);
    return trace;
}

TrainingTrace train(const HoneycombTorus &lat, const SectorSpec &sector, const AnsatzSpec &ansatz,
                    const PauliSum &hamiltonian, const OptimizerConfig &config, const TrainingOptions &options) {
    PreparedState prepared = prepare_sector(lat, sector, config.seed);
    TrainingTrace trace = train_from_state(prepared.state, lat, ansatz, hamiltonian, config, options);
    trace.prep = std::move(prepared.report);
    return trace;
}

nlohmann::json summary_json(const TrainingTrace &trace) {
    const auto &last = trace.records.back();
    nlohmann::json j{
        {"epochs", static_cast<int>(trace.records.size()) - 1},
        {"final_energy", last.energy},
        {"final_grad_norm", last.grad_norm},
        {"theta_opt", trace.theta_opt},
    };
    if (!std::isnan(last.infidelity)) {
        j["final_infidelity"] = last.infidelity;
    }
    if (!std::isnan(last.symmetry_drift)) {
        double worst = 0.0;
        for (const auto &r : trace.records) {
            worst = std::max(worst, r.symmetry_drift);
        }
        j["max_symmetry_drift"] = worst;
    }
    return j;
}

}  // namespace kitaev
