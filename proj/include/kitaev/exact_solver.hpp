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
#include <vector>

#include <json.hpp>

#include "kitaev/pauli.hpp"
#include "kitaev/statevector.hpp"

namespace kitaev {

/// Restricts the Krylov iteration to the joint eigenspace op = sign.
struct SectorConstraint {
    PauliString op;
    int sign = 1;
};

struct LanczosOptions {
    int krylov_dim = 60;
    int max_restarts = 400;
    /// Converged when ||H v - l v|| <= residual_tol * sum_t |coeff_t|.
    double residual_tol = 1e-9;
    std::uint64_t seed = 0x5eed;
    std::vector<SectorConstraint> sector;
    /// Keep extracting past k while eigenvalues stay within the degeneracy
    /// tolerance of the lowest one.
    bool extend_degenerate = true;
};

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending
    std::vector<StateVector> eigenstates;
    double degeneracy_tol = 1e-8;
    /// Number of returned eigenvalues within degeneracy_tol of the lowest.
    int degeneracy = 0;
    long matvecs = 0;

    double ground_energy() const {
        return eigenvalues.front();
    }
};

/// Lowest k eigenpairs by restarted Lanczos with full reorthogonalization
/// and locking of converged vectors; H is applied term by term.
SpectrumResult ground_subspace(const PauliSum &hamiltonian, int num_qubits, int k, double degeneracy_tol = 1e-8,
                               const LanczosOptions &options = {});

/// Repeated (1 - dtau H) steps with renormalization until the energy moves
/// by less than tol between steps. dtau <= 0 picks 1 / sum_t |coeff_t|.
StateVector imaginary_time_gs(const PauliSum &hamiltonian, const StateVector &initial_state, double dtau,
                              long max_steps, double tol);

/// ||Pi_GS psi||^2 over the degenerate ground subspace of a result.
double subspace_fidelity(const SpectrumResult &spectrum, const StateVector &state);

/// Pi_GS psi normalized: the ground state closest to psi.
StateVector project_to_ground_space(const SpectrumResult &spectrum, const StateVector &state);

/// In-place (1 + sign op)/2 for each constraint, without renormalizing.
void apply_sector_projector(StateVector &state, const std::vector<SectorConstraint> &sector);

nlohmann::json to_json(const SpectrumResult &spectrum);

}  // namespace kitaev
