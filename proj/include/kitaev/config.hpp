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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kitaev/ansatz.hpp"
#include "kitaev/stabilizer_prep.hpp"
#include "kitaev/vqe.hpp"

namespace kitaev {

/// Order in which a field sweep warm-starts each point from its neighbour.
enum class WarmStart { None, Ascending, Descending };

enum class Experiment { GsZeroField, GsFieldSweep, Dynamics, ExactSpectrum, NoiseReport };

std::string experiment_name(Experiment e);

/// One coupling family; field sweeps usually carry an FM and an AFM entry.
struct CouplingSpec {
    std::string label = "FM";
    double Jx = -1.0;
    double Jy = -1.0;
    double Jz = -1.0;
};

struct FieldSpec {
    /// Unit-free direction the magnitudes multiply, default z.
    std::array<double, 3> direction{0.0, 0.0, 1.0};
    std::vector<double> values{0.0};
};

struct OracleSpec {
    int krylov_dim = 60;
    double degeneracy_tol = 1e-8;
    double residual_tol = 1e-9;
};

struct DynamicsSpec {
    double dt = 0.1;
    int steps = 10;
    int trotter_order = 2;
    /// Field switched on at t = 0, applied uniformly.
    std::array<double, 3> quench_field{0.0, 0.0, 0.5};
    /// Empty means the lattice defaults ("horz", "diag").
    std::vector<BondPair> pairs;
};

struct NoiseSpec {
    double eps1 = 1e-4;
    double eps2 = 1e-3;
};

struct Thresholds {
    double infidelity = 1e-6;
    double relative_energy = 1e-6;
    double symmetry = 1e-9;
    double variational_slack = 1e-9;
    double magnetization = 0.05;
    double eta = 0.1;
    double correlator = 0.05;
    double static_identity = 1e-12;
};

struct RunConfig {
    Experiment experiment = Experiment::GsZeroField;
    int Lx = 2;
    int Ly = 2;
    std::vector<CouplingSpec> couplings{CouplingSpec{}};
    FieldSpec field;
    /// Empty means the ground-state sector found by the oracle.
    std::optional<SectorSpec> sector;
    AnsatzSpec ansatz;
    OptimizerConfig optimizer;
    std::vector<std::uint64_t> seeds{0};
    /// Skip remaining seeds once one reaches the infidelity threshold.
    bool stop_at_threshold = false;
    /// Field sweeps: start every point from the optimum of its neighbour,
    /// walking the grid in this order.
    WarmStart warm_start = WarmStart::Descending;
    int workers = 0;  // 0 = hardware concurrency
    OracleSpec oracle;
    DynamicsSpec dynamics;
    NoiseSpec noise;
    Thresholds thresholds;
    std::filesystem::path output_dir = "results";

    int num_qubits() const {
        return 2 * Lx * Ly;
    }
};

/// Validates a parsed document and throws ConfigInvalid naming the offending
/// field (as a JSON pointer) on the first problem. Unknown keys are errors.
RunConfig config_from_json(const nlohmann::json &doc);

/// Reads and parses a config file; syntax errors report line and column.
RunConfig load_config(const std::filesystem::path &path);

/// Canonical form used for hashing and for the manifest.
nlohmann::json to_json(const RunConfig &config);

}  // namespace kitaev
