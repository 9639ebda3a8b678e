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
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kitaev/config.hpp"
#include "kitaev/dynamics.hpp"
#include "kitaev/exact_solver.hpp"
#include "kitaev/noise.hpp"
#include "kitaev/vqe.hpp"

namespace kitaev {

/// Progress sink; the CLI prints to stderr, tests pass nothing.
using LogFn = std::function<void(const std::string &)>;

/// Runs fn(0..count-1) on at most workers threads. Each index writes only
/// its own slot, so results do not depend on scheduling.
void parallel_for(int count, int workers, const std::function<void(int)> &fn);

PauliSum hamiltonian_for(const HoneycombTorus &lat, const CouplingSpec &coupling, const std::array<double, 3> &field);

LanczosOptions lanczos_options(const OracleSpec &spec);

/// Ground space by Lanczos; k = 1 plus every degenerate partner.
SpectrumResult solve_oracle(const PauliSum &hamiltonian, int num_qubits, const OracleSpec &spec);

/// A stabilizer sector and how many ground states it holds.
struct SectorPiece {
    SectorSpec sector;  // plaquette_signs filled in
    int multiplicity = 0;
};

/// Sectors spanned by the ground space, found by diagonalizing a generic
/// combination of the stabilizers restricted to it. Sorted by vortex count,
/// then loop signs with + before -.
std::vector<SectorPiece> ground_sectors(const SpectrumResult &spectrum, const HoneycombTorus &lat);

struct SectorEnergy {
    SectorSpec sector;
    double energy = 0.0;
};

/// Lowest energy in every plaquette pattern and loop sector. Only
/// meaningful at zero field, where the stabilizers commute with H.
std::vector<SectorEnergy> scan_sectors(const HoneycombTorus &lat, const PauliSum &hamiltonian,
                                       const OracleSpec &spec);

/// Bytes needed by the largest working set of an experiment.
double estimated_memory_bytes(const RunConfig &config);

/// Throws ResourceLimit when the estimate exceeds the cap in
/// KITAEV_MEMORY_CAP_MB (default 4096).
void check_memory(const RunConfig &config);

struct SeedRun {
    std::uint64_t seed = 0;
    bool skipped = false;
    TrainingTrace trace;
};

struct ZeroFieldResult {
    CouplingSpec coupling;
    SpectrumResult oracle;
    SectorSpec sector;
    std::vector<SectorPiece> ground_pieces;
    std::vector<SeedRun> runs;
    int best = -1;  // index into runs

    double ground_energy() const {
        return oracle.ground_energy();
    }
};

ZeroFieldResult run_zero_field(const RunConfig &config, const CouplingSpec &coupling, const LogFn &log = {});

struct FieldPoint {
    double h = 0.0;
    double energy_exact = 0.0;
    int degeneracy = 1;
    int best_seed = 0;  // index into config seeds
    double energy_var = 0.0;
    double infidelity = 0.0;
    double mz_var = 0.0;
    double mz_exact = 0.0;
    double eta_var = 0.0;
    double eta_exact = 0.0;
    /// Lowest energy logged at this point by any seed and epoch.
    double min_logged_energy = 0.0;
};

struct FieldSweepResult {
    CouplingSpec coupling;
    SectorSpec sector;
    std::vector<FieldPoint> points;
    /// traces[seed index][point index]
    std::vector<std::vector<TrainingTrace>> traces;
};

FieldSweepResult run_field_sweep(const RunConfig &config, const CouplingSpec &coupling, const LogFn &log = {});

struct DynamicsSeries {
    std::string tag;
    CorrelatorSeries variational;  // Trotter from the variational state
    CorrelatorSeries exact;        // exact propagation from the oracle state
};

struct DynamicsResult {
    ZeroFieldResult ground;
    double overlap_with_oracle = 0.0;
    std::vector<DynamicsSeries> series;
};

/// Variational h = 0 ground state (best seed), then the quench. The oracle
/// reference is the projection of the variational state onto the exact
/// ground space, which picks the same member of a degenerate manifold.
DynamicsResult run_dynamics(const RunConfig &config, const LogFn &log = {});

struct NoiseReport {
    GateBudget budget;
    double fidelity = 0.0;
    int num_params = 0;
};

/// Budget of stabilization, ansatz and, for dynamics configs, the Trotter
/// circuit. Without a prep report the first seed is sampled into the
/// configured sector (zero vortices when the sector is automatic).
NoiseReport run_noise_report(const RunConfig &config, const PrepReport *prep = nullptr);

std::string noise_table(const NoiseReport &report, const NoiseSpec &noise);

/// Runs the configured experiment and writes its artifacts and manifest.
/// The output directory is created only after validation passes.
void run_experiment(const RunConfig &config, const LogFn &log = {});

}  // namespace kitaev
