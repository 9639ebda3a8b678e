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

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <json.hpp>

#include "kitaev/ansatz.hpp"
#include "kitaev/exact_solver.hpp"
#include "kitaev/stabilizer_prep.hpp"

namespace kitaev {

struct OptimizerConfig {
    int epochs = 500;
    double learning_rate = 0.01;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 0;
    /// theta ~ uniform(-init_scale, init_scale)
    double init_scale = 0.1;

    void validate() const;
};

class AdamOptimizer {
  public:
    AdamOptimizer(std::size_t num_params, const OptimizerConfig &config);
    void step(std::vector<double> &theta, const std::vector<double> &gradient);

  private:
    double lr_, beta1_, beta2_, eps_;
    long t_ = 0;
    std::vector<double> m_;
    std::vector<double> v_;
};

struct EpochRecord {
    int epoch = 0;
    double energy = 0.0;
    double infidelity = std::numeric_limits<double>::quiet_NaN();
    double grad_norm = 0.0;
    /// max_S |<S>_epoch - <S>_initial| over the monitored stabilizers.
    double symmetry_drift = std::numeric_limits<double>::quiet_NaN();
};

struct TrainingTrace {
    std::vector<EpochRecord> records;
    std::vector<double> theta_opt;
    std::vector<double> stabilizers_initial;
    PrepReport prep;
    /// |psi(theta_opt)>.
    std::optional<StateVector> final_state;

    double final_energy() const {
        return records.back().energy;
    }
    double final_infidelity() const {
        return records.back().infidelity;
    }
};

struct TrainingOptions {
    /// Ground space used for infidelity; null skips it.
    const SpectrumResult *oracle = nullptr;
    /// Strings whose expectations are tracked for symmetry_drift.
    std::vector<PauliString> monitored;
    /// Warm start; empty means random initialization from the config seed.
    std::vector<double> initial_theta;
};

/// <psi_theta|H|psi_theta> with psi_theta = circuit |state0>.
double energy(const StateVector &state0, const ParamCircuit &circuit, const PauliSum &hamiltonian);

struct EnergyGradient {
    double energy = 0.0;
    std::vector<double> gradient;
};

/// Energy and exact dE/dtheta by the adjoint method: one forward pass, then
/// a reverse sweep that un-applies each gate from the state and from
/// H|psi>, reading off Im<lambda|G|psi> for each generator G. If
/// forward_state is given it receives circuit |state0>.
EnergyGradient energy_and_gradient(const StateVector &state0, const ParamCircuit &circuit,
                                   const PauliSum &hamiltonian, StateVector *forward_state = nullptr);

std::vector<double> gradient(const StateVector &state0, const ParamCircuit &circuit, const PauliSum &hamiltonian);

std::vector<double> initial_parameters(int count, const OptimizerConfig &config);

/// Adam on the energy starting from a prepared state. records[0] is the
/// initial point; one record follows each update.
TrainingTrace train_from_state(const StateVector &state0, const HoneycombTorus &lat, const AnsatzSpec &ansatz,
                               const PauliSum &hamiltonian, const OptimizerConfig &config,
                               const TrainingOptions &options = {});

/// prepare_sector(lat, sector, config.seed), then train_from_state.
TrainingTrace train(const HoneycombTorus &lat, const SectorSpec &sector, const AnsatzSpec &ansatz,
                    const PauliSum &hamiltonian, const OptimizerConfig &config, const TrainingOptions &options = {});

nlohmann::json summary_json(const TrainingTrace &trace);

}  // namespace kitaev
